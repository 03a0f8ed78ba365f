#pragma once

#include <cstddef>
#include <vector>

#include "focklab/fock_space.hpp"
#include "focklab/hermitian.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

/// Throws std::invalid_argument when entries up to index N-1 need radial degree
/// n + m beyond what the rule integrates exactly (2(N-1) > 2K-1), or N == 0.
void check_resolution(std::size_t truncation, const Rules& rules);

/// M[m][n] = <T_phi e_n, e_m> = int phi e_n conj(e_m) dlambda for 0 <= m, n < N.
///
/// Origin-centred pieces (sectors, annuli, discs at 0) use the closed form
///   coeff * A_{nm} * Gamma(s+1) [P(s+1, pi r2^2) - P(s+1, pi r1^2)] / (2 pi sqrt(n! m!)),
/// s = (n+m)/2, A_{nm} = int_{theta1}^{theta2} e^{i(n-m) theta} d theta.
/// Off-centre discs use local polar quadrature per entry.
HermitianMatrix assemble(const SimpleSymbol& symbol, std::size_t truncation, const Rules& rules);

/// Bilinear sampled symbol: Gauss-Legendre in r on every radial grid cell, exact
/// Fourier integrals of the piecewise-linear angular interpolant.
HermitianMatrix assemble(const SampledSymbol& symbol, std::size_t truncation, const Rules& rules);

/// Dispatches on the symbol class; radial symbols go through radial_assemble.
HermitianMatrix assemble(const Symbol& symbol, std::size_t truncation, const Rules& rules);

/// Eigenvalues gamma_n = int_0^inf phi(sqrt(t/pi)) e^{-t} t^n / n! dt of the diagonal
/// Toeplitz matrix of a radial symbol.
///
/// Smooth profiles without breakpoints or compact support use the Gauss-Laguerre rule
/// directly; otherwise the radial integral is split at the breakpoints and evaluated
/// with composite Gauss-Legendre in r, with a shifted Gauss-Laguerre rule for any
/// unbounded tail.
std::vector<double> radial_eigenvalues(const RadialSymbol& symbol, std::size_t truncation, const Rules& rules);
HermitianMatrix radial_assemble(const RadialSymbol& symbol, std::size_t truncation, const Rules& rules);

/// Angular factor int_{theta1}^{theta2} e^{i k theta} d theta.
Complex angular_factor(int k, double theta_start, double theta_end);

/// <T_phi f, f> = int phi |f|^2 dlambda by region-adapted quadrature (simple symbols)
/// or sum gamma_n |a_n|^2 (radial symbols). Throws std::invalid_argument when f is
/// not unit within 1e-12 or the imaginary residue exceeds 1e-10.
double rayleigh(const SimpleSymbol& symbol, const FockFunction& f, const Rules& rules);
double rayleigh(const RadialSymbol& symbol, const FockFunction& f, const Rules& rules);

}  // namespace focklab
