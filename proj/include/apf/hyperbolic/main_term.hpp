#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace apf::hyp {

/// Spectral input for the main term. Supplied by the user; nothing here is computed.
struct SpectralData {
  struct SmallEigenvalue {
    double t_abs = 0;                   // |t_j| in (0, 1/2)
    std::complex<double> phi_product;   // phi_j(z) conj(phi_j(w))
  };
  double volume = 0;
  std::vector<SmallEigenvalue> small_eigs;
  std::complex<double> quarter_sum;      // sum over t_j = 0 of phi_j(z) conj(phi_j(w))
  std::complex<double> eisenstein_const; // sum over cusps of E_a(z,1/2) conj(E_a(w,1/2))

  /// Validates volume > 0 and every |t_j| in (0, 1/2).
  void validate() const;

  /// PSL(2, Z): volume pi/3, no small eigenvalues, lambda = 1/4 blocks zero.
  static SpectralData modular_default();
  static SpectralData parse(std::istream& in);
  static SpectralData load(const std::filesystem::path& path);
};

/// M(s, z, w): the volume term, the small-eigenvalue terms, the t_j = 0 term and the
/// Eisenstein term. Complex products enter through their real parts.
double main_term(const SpectralData& sd, double s);

/// int_0^s M(x) dx in closed form.
double main_term_integral(const SpectralData& sd, double s);

/// M^{+/-}(s, delta): the same spectral blocks weighted by h^{+/-} instead of their
/// leading asymptotics; the constant eigenfunction enters as h^{+/-}(i/2)/volume.
double main_term_smoothed(const SpectralData& sd, double s, double delta, int sign);

}  // namespace apf::hyp
