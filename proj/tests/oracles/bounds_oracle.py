#!/usr/bin/env python3
# Independent high-precision evaluation of the closed-form rate and bound
# formulas. `--json` writes the values read by the C++ tests
# (tests/oracles/bounds_oracle.json); rerun it whenever a formula changes.
import sys

from mpmath import mp, mpf, e, exp, log, sqrt, ceil, floor, factorial

mp.dps = 50


def upper_rate(logn, p, lam, dim_kappa):
    return exp((1 + mpf(1) / (2 * p)) * log(logn)) * exp(-2 * sqrt(lam / (p * dim_kappa)) * sqrt(logn))


def upper_rate_interval(logn, p, lam):
    return exp((mpf(1) / 2 + mpf(1) / (2 * p)) * log(logn)) * exp(-2 * sqrt(lam / p) * sqrt(logn))


def upper_rate_poisson(logn, p, dim_kappa, chi):
    return exp(-(1 - chi) * sqrt(2 / (p * dim_kappa)) * sqrt(logn * log(logn)))


def poisson_pmf(lam, m):
    return exp(-lam) * lam**m / factorial(m)


def lower_rate(n, p, sigma_minus_kappa, pmf):
    mmax = int(floor(log(n) ** (mpf(2) / 3)))
    best = max(pmf(m) ** (1 / mpf(p)) * mpf(n) ** (-1 / (m * sigma_minus_kappa)) for m in range(1, mmax + 1))
    return mpf(2) ** (-2 - 1 / mpf(p)) * best, mmax


def concentration(eps, n, p, lam, k1, diam_alpha):
    den = 16 * k1 * exp(lam) * diam_alpha**2 * mpf(n) ** (1 - mpf(2) / p) + 4 * lam**2 * eps * diam_alpha * mpf(n) ** (-1 / mpf(p))
    return exp(-eps**2 * lam**3 / den)


def covering_bound_nm(m, ms):
    return exp(m) * (1 + mpf(ms) / m) ** m


def min_sample_size(eps, p, lam, dim_2kappa):
    x = p * dim_2kappa * log(1 / eps) ** 2 / (4 * lam)
    return exp(x), int(ceil(exp(x)))


def window_edge(m, sigma, kappa, k2, alpha):
    w = mpf(2) ** (sigma / kappa) / (k2 ** (1 / kappa) * (2 * factorial(m)) ** (1 / (m * kappa)))
    return min(w, alpha)


def frozen_values():
    vals = {
        "covering_bound_nm_1_10": covering_bound_nm(1, 10),
        "covering_bound_nm_1_1": covering_bound_nm(1, 1),
        "covering_bound_nm_3_9": covering_bound_nm(3, 9),
        "upper_rate_logn4": upper_rate(mpf(4), 1, 1, 2),
        "upper_rate_interval_logn4": upper_rate_interval(mpf(4), 1, 1),
        "upper_rate_poisson_logn4": upper_rate_poisson(mpf(4), 1, 2, 0),
        "upper_rate_poisson_logn4_chi_half": upper_rate_poisson(mpf(4), 1, 2, mpf(1) / 2),
        "lower_rate_n100_p1": lower_rate(100, 1, 1, lambda m: poisson_pmf(1, m))[0],
        "lower_rate_n100_p2": lower_rate(100, 2, 1, lambda m: poisson_pmf(1, m))[0],
        "concentration_eps1_n100": concentration(1, 100, 1, 1, 1, 2),
        "concentration_eps_half_n256_p1_5": concentration(mpf(1) / 2, 256, mpf(3) / 2, mpf(6) / 5, mpf(11) / 5, 2),
        "min_sample_size_e_minus_2": min_sample_size(exp(-2), 1, 1, 1)[1],
        "min_sample_size_0_1_dim3": min_sample_size(mpf(1) / 10, 1, 1, 3)[1],
        "covering_lower_0_1_m1_half": mpf(10) ** (mpf(1) / 2),
        "window_m1_k0_1": window_edge(1, 1, mpf(1) / 10, 2, 1),
        "window_m2_k0_1": window_edge(2, 1, mpf(1) / 10, 2, 1),
        "window_m1_k0_5_alpha10": window_edge(1, 1, mpf(1) / 2, 1, 10),
        "window_m3_k0_5_alpha10": window_edge(3, 1, mpf(1) / 2, 1, 10),
        "threshold_m1_k0_1": window_edge(1, 1, mpf(1) / 10, 2, 1) ** (-mpf(9) / 10),
        "threshold_m2_k0_1": window_edge(2, 1, mpf(1) / 10, 2, 1) ** (-2 * mpf(9) / 10),
        "threshold_m3_k0_5_alpha10": window_edge(3, 1, mpf(1) / 2, 1, 10) ** (-3 * mpf(1) / 2),
        "borel_half_1": exp(-mpf(1) / 2),
        "borel_half_2": exp(-1) / 2,
        "hawkes_mean_count_nu1_a_half_b2_T10": 1 * (10 / (1 - mpf(1) / 2) - (mpf(1) / 2) / ((mpf(1) / 2) ** 2 * 2) * (1 - exp(-2 * (mpf(1) / 2) * 10))),
    }
    return {k: float(v) for k, v in vals.items()}


if __name__ == "__main__" and "--json" in sys.argv:
    import json
    json.dump(frozen_values(), sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
elif __name__ == "__main__":
    print("covering_bound_nm(1,10)   =", mp.nstr(covering_bound_nm(1, 10), 20))
    print("covering_bound_nm(1,1)    =", mp.nstr(covering_bound_nm(1, 1), 20))
    print("covering_bound_nm(3,9)    =", mp.nstr(covering_bound_nm(3, 9), 20))
    print("upper_rate(logn=4)        =", mp.nstr(upper_rate(mpf(4), 1, 1, 2), 20))
    print("upper_rate_interval(4)    =", mp.nstr(upper_rate_interval(mpf(4), 1, 1), 20))
    print("upper_rate_poisson(4)     =", mp.nstr(upper_rate_poisson(mpf(4), 1, 2, 0), 20))
    print("upper_rate_poisson(4,.5)  =", mp.nstr(upper_rate_poisson(mpf(4), 1, 2, mpf(1) / 2), 20))
    v, mmax = lower_rate(100, 1, 1, lambda m: poisson_pmf(1, m))
    print("lower_rate(100) mmax=%d    =" % mmax, mp.nstr(v, 20))
    v, mmax = lower_rate(100, 2, 1, lambda m: poisson_pmf(1, m))
    print("lower_rate(100,p=2) mmax=%d =" % mmax, mp.nstr(v, 20))
    print("concentration(1,100)      =", mp.nstr(concentration(1, 100, 1, 1, 1, 2), 20))
    print("concentration(1,100) w/o square on diam+alpha =",
          mp.nstr(exp(-1 / (16 * e / 100 + mpf(8) / 100)), 20))
    print("concentration(0.5,256,p=1.5,lam=1.2,k1=2.2,D=2) =",
          mp.nstr(concentration(mpf(1) / 2, 256, mpf(3) / 2, mpf(6) / 5, mpf(11) / 5, 2), 20))
    print("min_sample_size(e^-2)     =", min_sample_size(exp(-2), 1, 1, 1))
    print("min_sample_size(0.1,d=3)  =", min_sample_size(mpf(1) / 10, 1, 1, 3))
    print("covering_lower(0.1,1,.5)  =", mp.nstr(mpf(10) ** mpf(0.5), 20))
    print("window m=1 (s=1,k=.1,K2=2,a=1) =", mp.nstr(window_edge(1, 1, mpf(1) / 10, 2, 1), 20))
    print("window m=2 (s=1,k=.1,K2=2,a=1) =", mp.nstr(window_edge(2, 1, mpf(1) / 10, 2, 1), 20))
    print("window m=1 (s=1,k=.5,K2=1,a=10) =", mp.nstr(window_edge(1, 1, mpf(1) / 2, 1, 10), 20))
    print("window m=3 (s=1,k=.5,K2=1,a=10) =", mp.nstr(window_edge(3, 1, mpf(1) / 2, 1, 10), 20))
    print("threshold m=1 (s=1,k=.1,K2=2) =", mp.nstr(window_edge(1, 1, mpf(1) / 10, 2, 1) ** (-mpf(9) / 10), 20))
    print("threshold m=2 (s=1,k=.1,K2=2) =", mp.nstr(window_edge(2, 1, mpf(1) / 10, 2, 1) ** (-2 * mpf(9) / 10), 20))
    print("threshold m=3 (s=1,k=.5,K2=1,a=10) =", mp.nstr(window_edge(3, 1, mpf(1) / 2, 1, 10) ** (-3 * mpf(1) / 2), 20))
    print("borel(0.5,1)              =", mp.nstr(exp(-mpf(1) / 2), 20))
    print("borel(0.5,2)              =", mp.nstr(exp(-1) * mpf(1) / 2, 20))
    # Hawkes expected count, exponential kernel
    nu, a, b, T = 1, mpf(1) / 2, 2, 10
    print("hawkes E N(T)             =", mp.nstr(nu * (T / (1 - a) - a / ((1 - a) ** 2 * b) * (1 - exp(-b * (1 - a) * T))), 20))
