#include "kpz/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "kpz/errors.hpp"
#include "kpz/quadrature.hpp"

namespace kpz {

cplx q_pochhammer_inf(cplx a, double tau, double tol) {
  if (!(tau > 0.0 && tau < 1.0)) fail(ErrorClass::domain, "q-Pochhammer needs 0 < tau < 1");
  cplx prod = 1.0;
  cplx term = a;
  const double tail = 1.0 / (1.0 - tau);
  for (int k = 0; k < 100000; ++k) {
    if (std::abs(term) * tail < tol) break;
    prod *= (1.0 - term);
    term *= tau;
  }
  return prod;
}

cplx e_tau(cplx z, double tau, double tol) {
  if (!(tau > 0.0 && tau < 1.0)) fail(ErrorClass::domain, "e_tau needs 0 < tau < 1");
  // pole check: z tau^k == 1 for some k >= 0
  if (std::abs(z.imag()) < 1e-15 && z.real() >= 1.0) {
    double k = std::log(z.real()) / -std::log(tau);
    if (std::abs(k - std::round(k)) < 1e-12) fail(ErrorClass::pole, "e_tau evaluated at a pole z = tau^{-k}");
  }
  cplx d = q_pochhammer_inf(z, tau, tol);
  if (d == 0.0) fail(ErrorClass::pole, "e_tau evaluated at a pole");
  return 1.0 / d;
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

cplx gamma_complex(cplx z) {
  if (z.real() < 0.5) {
    cplx s = std::sin(M_PI * z);
    if (s == 0.0) fail(ErrorClass::pole, "Gamma at a nonpositive integer");
    return M_PI / (s * gamma_complex(1.0 - z));
  }
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cplx t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx gamma_product(cplx s) {
  if (std::abs(s.imag()) < 1e-300 && std::abs(s.real() - std::round(s.real())) < 1e-14)
    fail(ErrorClass::pole, "Gamma(-s)Gamma(1+s) at an integer");
  const cplx I(0.0, 1.0);
  if (s.imag() > 0.0) {
    // -pi/sin(pi s) = -2 pi i e^{i pi s} / (e^{2 i pi s} - 1), stable for large Im s
    cplx e1 = std::exp(I * M_PI * s);
    return -2.0 * M_PI * I * e1 / (e1 * e1 - 1.0);
  }
  if (s.imag() < 0.0) return std::conj(gamma_product(std::conj(s)));
  return -M_PI / std::sin(M_PI * s.real());
}

namespace {

AiryValue airy_series(double x) {
  // Ai = c1 f - c2 g, Ai' = c1 f' - c2 g'
  const double c1 = 0.355028053887817239260063186004;
  const double c2 = 0.258819403792806798405183560189;
  double x3 = x * x * x;
  double f = 1.0, g = x, fp = 0.0, gp = 1.0;
  double tf = 1.0, tg = x;
  for (int k = 1; k < 200; ++k) {
    // f term: x^{3k} prod 1/((3j-1)(3j)),  g term: x^{3k+1} prod 1/((3j)(3j+1))
    tf *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
    tg *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
    f += tf;
    g += tg;
    fp += 3.0 * k * tf / x;
    gp += (3.0 * k + 1.0) * tg / x;
    if (std::abs(tf) + std::abs(tg) < 1e-18 * (std::abs(f) + std::abs(g))) break;
  }
  if (x == 0.0) fp = 0.0, gp = 1.0;
  return {c1 * f - c2 * g, c1 * fp - c2 * gp};
}

// x > 0: vertical path through the saddle at sqrt(x).
AiryValue airy_right(double x) {
  const double c = std::sqrt(x);
  const double zeta = 2.0 / 3.0 * x * c;
  const double smax = std::sqrt(40.0 / c);
  std::vector<double> br;
  const int panels = 8;
  for (int i = 0; i <= panels; ++i) br.push_back(smax * i / panels);
  Rule r = composite_gl(br, 24);
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double s = r.x[i];
    double e = std::exp(-c * s * s) * r.w[i];
    double ph = s * s * s / 3.0;
    a += e * std::cos(ph);
    b += e * (c * std::cos(ph) + s * std::sin(ph));
  }
  double pre = std::exp(-zeta) / M_PI;
  return {pre * a, -pre * b};
}

// x < 0: straight path through the saddle i sqrt(|x|) in direction e^{i pi/4},
// starting on the real axis; the lower half is the mirror image.
AiryValue airy_left(double x) {
  const double X = -x;
  const double rx = std::sqrt(X);
  const cplx I(0.0, 1.0);
  const cplx dir = std::exp(I * (M_PI / 4.0));
  const cplx t0 = I * rx;
  const double s0 = -std::sqrt(2.0) * rx;
  const double s1 = 8.0 / std::pow(X, 0.25) + 6.0;
  std::vector<double> br;
  const int panels = 24 + static_cast<int>(2.0 * X * rx);
  for (int i = 0; i <= panels; ++i) br.push_back(s0 + (s1 - s0) * i / panels);
  Rule r = composite_gl(br, 20);
  cplx a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    cplx t = t0 + dir * r.x[i];
    cplx e = std::exp(t * t * t / 3.0 - x * t) * dir * r.w[i];
    a += e;
    b -= t * e;
  }
  // (1/2 pi i) (I_up - conj(I_up)) = Im(I_up) / pi
  return {a.imag() / M_PI, b.imag() / M_PI};
}

// x <= -8: modulus-phase asymptotic series, summed to the smallest term.
AiryValue airy_asymptotic_left(double x) {
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double pu = 0.0, qu = 0.0, pv = 0.0, qv = 0.0;
  double uk = 1.0, last = std::numeric_limits<double>::infinity();
  double zk = 1.0;  // zeta^{-k}
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
      zk /= zeta;
    }
    double vk = (k == 0) ? 1.0 : -(6.0 * k + 1.0) / (6.0 * k - 1.0) * uk;
    double term = uk * zk;
    if (term > last) break;
    last = term;
    // signs (-1)^{floor(k/2)}; even k feed P, odd k feed Q
    double sg = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      pu += sg * term;
      pv += sg * vk * zk;
    } else {
      qu += sg * term;
      qv += sg * vk * zk;
    }
    if (term < 1e-17 * std::abs(pu)) break;
  }
  const double ph = zeta - 0.25 * M_PI;
  const double c = std::cos(ph), sn = std::sin(ph);
  const double pre = 1.0 / std::sqrt(M_PI);
  const double z4 = std::pow(z, 0.25);
  return {pre / z4 * (c * pu + sn * qu), pre * z4 * (sn * pv - c * qv)};
}

}  // namespace

AiryValue airy(double x) {
  if (!std::isfinite(x)) fail(ErrorClass::domain, "Airy argument must be finite");
  if (std::abs(x) <= 4.0) return airy_series(x);
  if (x > 0.0) return airy_right(x);
  if (x <= -8.0) return airy_asymptotic_left(x);
  return airy_left(x);
}

}  // namespace kpz
