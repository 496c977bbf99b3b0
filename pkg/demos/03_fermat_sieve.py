"""Fermat's method restricted to sieve candidates.

Writing u + v = L + z with L = ceil(2 sqrt N), plain Fermat tries every
z = 0, 1, 2, ...  Here z mod m must lie in the shifted sieve set, so only
those candidates are square-tested.  The 29-digit example below has
z of about 4e10 yet needs under two million square tests.
"""
import time

from hyperfactor.fermat import build_modulus, factor_auto, factor_with_lambda, lambda_bound
from hyperfactor.sieve import sieve_cardinality

N = 7909787
print(f"offset bound for {N}: {float(lambda_bound(N)):.2f}")
report = factor_with_lambda(N, 280)
print(f"bound 280 -> {report.divisor} * {report.cofactor}, z={report.z}, y={report.y}, "
      f"{report.square_tests} square tests modulo {report.modulus_used}")
report = factor_auto(N)
print(f"auto mode -> {report.divisor} * {report.cofactor} after {report.square_tests} tests")

N = 17344343992304993085649094809
lam = 40406162576
m = build_modulus(lam, N, 1, tuned=True)
print(f"\nN = {N}")
print(f"tuned modulus {m} = {m.value}, {sieve_cardinality(N, m)} candidates")
start = time.perf_counter()
report = factor_with_lambda(N, lam, modulus=m)
print(f"-> {report.divisor} * {report.cofactor}")
print(f"   z = {report.z}, {report.square_tests} square tests, "
      f"{time.perf_counter() - start:.1f}s")
