class DefaultParams:
    CACHE_ENV_VAR = "DERGRAPH_CACHE_DIR"
    CACHE_DIR = "./.dergraph-cache"
    TRACE_POWER = 2
    MAX_TRACE_POWER = 4
    MIN_GRAPH_DEGREE = 2
    MAX_GRAPH_DEGREE = 8
    MAX_MATRIX_DEGREE = 7
    MIN_DISTANCE_DEGREE = 4
    SWEEP_FROM = 6
    SWEEP_TO = 20
    SIGN_MAX = 12
    NUMERIC_RTOL = 1e-6
    TRANSITIVITY_SAMPLES = 10
    FALLBACK_SEARCH_MAX_SUPPORT = 9
