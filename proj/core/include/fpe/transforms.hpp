#ifndef FPE_TRANSFORMS_HPP
#define FPE_TRANSFORMS_HPP

#include <span>

#include "fpe/coefficients.hpp"
#include "fpe/field.hpp"

namespace fpe {

/// Chain of changes of variables f <-> rho <-> h <-> xi. Reconstructing a
/// density always goes through exp(h/D), which is positive for any finite h;
/// this is what guarantees positivity of the reconstructed states.

Field rho_from_f(const Field& f, const EquilibriumState& eq);
Field f_from_rho(const Field& rho, const EquilibriumState& eq);

Field h_from_rho(const Field& rho, std::span<const double> diffusion);
Field rho_from_h(const Field& h, std::span<const double> diffusion);

Field xi_from_h(const Field& h, std::span<const double> h0);
Field h_from_xi(const Field& xi, std::span<const double> h0);

/// h0 = D log(rho0), the time-independent part of the log state. It enters
/// the operator coefficients, not the evolving state, hence a plain array.
std::vector<double> initial_log_state(std::span<const double> rho0,
                                      std::span<const double> diffusion);

}  // namespace fpe

#endif
