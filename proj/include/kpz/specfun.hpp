#pragma once

#include <complex>

namespace kpz {

using cplx = std::complex<double>;

// (a; tau)_inf, truncated once |a| tau^K / (1 - tau) < tol.
cplx q_pochhammer_inf(cplx a, double tau, double tol = 1e-17);

// e_tau(z) = 1 / (z; tau)_inf. Throws a pole error at z = tau^{-k}.
cplx e_tau(cplx z, double tau, double tol = 1e-17);

// Complex Gamma via Lanczos (g = 7) with reflection for Re z < 1/2.
cplx gamma_complex(cplx z);

// Gamma(-s) Gamma(1+s) = -pi / sin(pi s). Throws a pole error at integers.
cplx gamma_product(cplx s);

struct AiryValue {
  double ai;
  double aip;  // derivative
};

AiryValue airy(double x);
inline double airy_ai(double x) { return airy(x).ai; }

}  // namespace kpz
