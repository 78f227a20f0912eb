#pragma once

#include <cmath>

#include "sulfsim/config.hpp"

namespace sulfsim {

/// A rate value together with its partial derivatives, for Newton assembly.
struct RateEval {
    double value = 0.0;
    double d_first = 0.0;   ///< partial derivative w.r.t. the first argument
    double d_second = 0.0;  ///< partial derivative w.r.t. the second argument
};

/// Sulfatation rate at the solid wall:
///   eta(alpha, beta) = alpha^p * (beta_bar - beta)^q  for alpha >= 0, beta >= 0,
///   0 otherwise.
/// (beta_bar - beta) is clamped at 0 before exponentiation so a transient
/// beta > beta_bar never feeds a negative base to a non-integer q; the rate
/// already vanishes at saturation, so the extension is continuous. At the
/// branch seams the derivatives take the interior one-sided limit.
inline RateEval eta(double alpha, double beta, const ModelParameters& m) {
    RateEval r;
    if (alpha < 0.0 || beta < 0.0) return r;
    const double cap = m.beta_bar - beta;
    if (cap < 0.0) return r;
    const double p = m.p_order;
    const double q = m.q_order;
    const double ap = std::pow(alpha, p);
    const double cq = std::pow(cap, q);
    r.value = ap * cq;
    r.d_first = p * std::pow(alpha, p - 1.0) * cq;
    r.d_second = -q * ap * std::pow(cap, q - 1.0);
    return r;
}

/// Henry interfacial exchange B*(H*u1 - u2|_wall); positive means gas
/// dissolving into the water film.
inline RateEval henry_exchange(double u1_local, double u2_at_gamma_wa,
                               const ModelParameters& m) {
    RateEval r;
    r.value = m.B * (m.H * u1_local - u2_at_gamma_wa);
    r.d_first = m.B * m.H;
    r.d_second = -m.B;
    return r;
}

struct SourcePair {
    double u2_rate = 0.0;
    double u3_rate = 0.0;
};

/// Bulk interconversion H2S(aq) <-> H2SO4. The two rates are computed from a
/// single expression so they sum to exactly zero.
inline SourcePair bulk_sources(double u2, double u3, const ModelParameters& m) {
    const double net = m.phi2 * m.k2 * u2 - m.phi3 * m.k3 * u3;
    return {-net, net};
}

} // namespace sulfsim
