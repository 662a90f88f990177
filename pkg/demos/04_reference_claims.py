"""
Replaying the published reference data
======================================

"""

# the bundled fixture file carries 17 table rows (p, q, n, listed rank),
# two height-pairing determinants, the 877 exact-square generator, and the
# misprint record; run_claims() re-checks all of them from first principles
from biquadrank import run_claims

claims = run_claims()
for claim in claims:
    print(f"{'PASS' if claim.passed else 'FAIL'}  {claim.name}: {claim.detail}")

passed = sum(1 for c in claims if c.passed)
print()
print(f"{passed}/{len(claims)} claims pass")

# the same replay is available from the command line:
#   biquadrank verify-paper
# and the other subcommands cover the rest of the surface:
#   biquadrank search --max-base 300
#   biquadrank analyze --ab 2 1
#   biquadrank report --max-base 300 --skip-heights --format csv
