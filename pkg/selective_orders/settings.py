from django.conf import settings

# upper bound on the rational primes visited by the Frobenius scan
SCAN_BOUND: int = getattr(settings, "SELECTIVITY_SCAN_BOUND", 5000)

# primes per element of G_R tested with no new subgroup data before stopping
SCAN_WINDOW: int = getattr(settings, "SELECTIVITY_SCAN_WINDOW", 50)

# seed for the Cantor-Zassenhaus equal-degree splitting
SEED: int = getattr(settings, "SELECTIVITY_SEED", 1009)

# largest dimension exercised by the verify command
VERIFY_N_MAX: int = getattr(settings, "SELECTIVITY_VERIFY_N_MAX", 5)

# residue characteristics exercised by the oracle suite
VERIFY_PRIMES: tuple[int, ...] = tuple(
    getattr(settings, "SELECTIVITY_VERIFY_PRIMES", (2, 3, 5))
)

# indentation used when serializing reports as JSON
JSON_INDENT: int = getattr(settings, "SELECTIVITY_JSON_INDENT", 2)
