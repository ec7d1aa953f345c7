#include "fpe/transforms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace fpe {

namespace {

// Exponents below this are clamped instead of silently flushing the density
// to zero; near-vacuum states keep a representable positive value and the
// clamp is reported once per process.
constexpr double kExponentFloor = -700.0;

void warn_underflow_once(double worst) {
  static bool warned = false;
  if (!warned) {
    warned = true;
    std::fprintf(stderr,
                 "fpe: exp argument %.3g below %.0f clamped during density "
                 "reconstruction (reported once)\n",
                 worst, kExponentFloor);
  }
}

void require_kind(const Field& f, FieldKind kind, const char* op) {
  if (f.kind != kind) {
    throw std::invalid_argument(std::string(op) + ": unexpected field kind");
  }
}

void require_positive(const Field& f, const char* op) {
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!(f.values[i] > 0.0)) {
      throw std::domain_error(std::string(op) + ": non-positive value " +
                              std::to_string(f.values[i]) + " at node " +
                              std::to_string(i));
    }
  }
}

}  // namespace

Field rho_from_f(const Field& f, const EquilibriumState& eq) {
  require_kind(f, FieldKind::density_f, "rho_from_f");
  require_positive(f, "rho_from_f");
  Field rho{FieldKind::scaled_rho, f.values, f.time};
  for (std::size_t i = 0; i < rho.values.size(); ++i) rho.values[i] /= eq.feq_values[i];
  return rho;
}

Field f_from_rho(const Field& rho, const EquilibriumState& eq) {
  require_kind(rho, FieldKind::scaled_rho, "f_from_rho");
  require_positive(rho, "f_from_rho");
  Field f{FieldKind::density_f, rho.values, rho.time};
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] *= eq.feq_values[i];
  return f;
}

Field h_from_rho(const Field& rho, std::span<const double> diffusion) {
  require_kind(rho, FieldKind::scaled_rho, "h_from_rho");
  require_positive(rho, "h_from_rho");
  Field h{FieldKind::log_h, rho.values, rho.time};
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    h.values[i] = diffusion[i] * std::log(rho.values[i]);
  }
  return h;
}

Field rho_from_h(const Field& h, std::span<const double> diffusion) {
  require_kind(h, FieldKind::log_h, "rho_from_h");
  Field rho{FieldKind::scaled_rho, h.values, h.time};
  double worst = 0.0;
  for (std::size_t i = 0; i < rho.values.size(); ++i) {
    double e = h.values[i] / diffusion[i];
    if (e < kExponentFloor) {
      worst = std::min(worst, e);
      e = kExponentFloor;
    }
    rho.values[i] = std::exp(e);
  }
  if (worst < 0.0) warn_underflow_once(worst);
  return rho;
}

Field xi_from_h(const Field& h, std::span<const double> h0) {
  require_kind(h, FieldKind::log_h, "xi_from_h");
  if (h.values.size() != h0.size()) {
    throw std::invalid_argument("xi_from_h: shape mismatch");
  }
  Field xi{FieldKind::deviation_xi, h.values, h.time};
  for (std::size_t i = 0; i < xi.values.size(); ++i) xi.values[i] -= h0[i];
  return xi;
}

Field h_from_xi(const Field& xi, std::span<const double> h0) {
  require_kind(xi, FieldKind::deviation_xi, "h_from_xi");
  if (xi.values.size() != h0.size()) {
    throw std::invalid_argument("h_from_xi: shape mismatch");
  }
  Field h{FieldKind::log_h, xi.values, xi.time};
  for (std::size_t i = 0; i < h.values.size(); ++i) h.values[i] += h0[i];
  return h;
}

std::vector<double> initial_log_state(std::span<const double> rho0,
                                      std::span<const double> diffusion) {
  std::vector<double> h0(rho0.size());
  for (std::size_t i = 0; i < rho0.size(); ++i) {
    if (!(rho0[i] > 0.0)) {
      throw std::domain_error("initial_log_state: non-positive rho0 at node " +
                              std::to_string(i));
    }
    h0[i] = diffusion[i] * std::log(rho0[i]);
  }
  return h0;
}

}  // namespace fpe
