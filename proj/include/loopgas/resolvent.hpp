#pragma once

#include <complex>

#include "loopgas/params.hpp"

namespace loopgas {

// Resolvent W(xi) of the partition-function series, analytic off the cut
// [-gamma, gamma]. For n < 2 this is W_part + W_hom with the cubic B; for
// n = 2 the explicit closed form obtained as the n->2 limit along the
// critical line. Principal branches throughout.
std::complex<double> resolvent_w(const CriticalParams& p, std::complex<double> xi);

// Spectral density rho(u) on (-gamma, gamma): the jump of W across the cut.
// Evaluated by the closed form away from u = 0 and by a Taylor series near
// u = 0 where the closed form loses all precision to cancellation.
// Endpoint inputs are clamped (rho(+-gamma) = 0).
double spectral_density(const CriticalParams& p, double u);

// rho evaluated straight from the printed closed form (no series patch);
// used by tests to validate the series switch-over region.
double spectral_density_direct(const CriticalParams& p, double u);

// rho at u = gamma - du for tiny du (quadrature endpoint nodes); evaluates
// the vanishing prefactors by divided differences so the value stays
// accurate down to du ~ 1e-30.
double spectral_density_edge(const CriticalParams& p, double du);

}  // namespace loopgas
