# Instance and report config keys

CONTEXT = "context"
OBJECT = "object"
RELATIONS = "relations"
KIND = "kind"
VERDICT = "verdict"
WITNESS = "witness"
TRACE = "trace"
NOTES = "notes"
DEFECTS = "defects"
VERBOSE = "verbose"

# Context kinds

FINSET = "finset"
GROUP = "group"
ABELIAN = "abelian"
CONTEXT_KINDS = (FINSET, GROUP, ABELIAN)

# Sequence modes

POINTED = "pointed"
FORK = "fork"

# Exit codes

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_INPUT_ERROR = 2

# Limits

TUPLE_MATERIALIZATION_LIMIT = 10 ** 7
MAX_GROUP_ORDER = 64
MAX_CUBE_DIMENSION = 5

CATALOG_ENV_VAR = "CUBELAB_CATALOG"
