"""Published prediction tables used as reference rows in reports.

Columns follow the report layout: P(G), P(A|G), P(B), P(A|B), P_T, P(A).
The competitor models are not implemented here; their numbers are only
printed next to fitted results for comparison.
"""

COLUMNS = ("p_g", "p_a_given_g", "p_b", "p_a_given_b", "p_t", "p_a")

# dataset name -> method -> row
PUBLISHED = {
    "busemeyer2009-narrow": {
        "Obs": (0.17, 0.41, 0.83, 0.63, 0.59, 0.69),
        "EM": (0.17, 0.39, 0.83, 0.61, 0.57, 0.69),
        "QBAE": (0.17, 0.41, 0.83, 0.66, 0.62, 0.68),
        "MBA": (0.17, 0.40, 0.83, 0.63, 0.59, 0.59),
        "Proposed": (0.17, 0.41, 0.83, 0.56, 0.53, 0.60),
    },
    "wang2016-exp1": {
        "Obs": (0.21, 0.41, 0.79, 0.58, 0.54, 0.59),
        "EM": (0.21, 0.42, 0.79, 0.58, 0.55, 0.60),
        "QBAE": (0.21, 0.45, 0.79, 0.54, 0.52, 0.57),
        "MBA": (0.21, 0.39, 0.79, 0.60, 0.55, 0.55),
        "Proposed": (0.21, 0.41, 0.79, 0.56, 0.53, 0.58),
    },
    "wang2016-exp2": {
        "Obs": (0.24, 0.37, 0.76, 0.61, 0.55, 0.60),
        "EM": (0.24, 0.38, 0.76, 0.62, 0.56, 0.61),
        "QBAE": (0.21, 0.33, 0.79, 0.68, 0.61, 0.63),
        "MBA": (0.23, 0.39, 0.77, 0.66, 0.60, 0.59),
        "Proposed": (0.24, 0.41, 0.76, 0.56, 0.52, 0.56),
    },
    "wang2016-exp3": {
        "Obs": (0.24, 0.33, 0.76, 0.66, 0.58, 0.62),
        "EM": (0.25, 0.34, 0.75, 0.66, 0.58, 0.64),
        "QBAE": (0.21, 0.32, 0.79, 0.69, 0.61, 0.63),
        "MBA": (0.23, 0.47, 0.77, 0.55, 0.53, 0.53),
        "Proposed": (0.24, 0.35, 0.76, 0.56, 0.51, 0.55),
    },
    "Average": {
        "Obs": (0.22, 0.38, 0.79, 0.62, 0.57, 0.63),
        "EM": (0.22, 0.38, 0.78, 0.62, 0.57, 0.64),
        "QBAE": (0.20, 0.38, 0.80, 0.64, 0.59, 0.63),
        "MBA": (0.21, 0.41, 0.79, 0.61, 0.57, 0.57),
        "Proposed": (0.22, 0.39, 0.79, 0.56, 0.52, 0.57),
    },
}

REFERENCE_DATASETS = ("busemeyer2009-narrow", "wang2016-exp1", "wang2016-exp2", "wang2016-exp3")
