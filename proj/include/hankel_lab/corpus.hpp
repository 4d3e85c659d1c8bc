#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hankel_lab/blaschke.hpp"

namespace hankel_lab {

enum class SymbolKind { TwoSV, Inner, Rational, RealRational };

const char* to_string(SymbolKind k);

/// Input description of a symbol. Which fields matter depends on `kind`:
/// two_sv uses s, s_tilde, psi, psi_tilde; inner uses theta; rational uses
/// numerator/denominator, or seed/degree/pole_margin when seed is set;
/// real_rational uses seed/degree/pole_margin.
struct SymbolSpec {
  SymbolKind kind = SymbolKind::Rational;
  double s = 0.0;
  double s_tilde = 0.0;
  BlaschkeProduct psi, psi_tilde, theta;
  Polynomial numerator, denominator{1.0};
  std::optional<std::uint64_t> seed;
  int degree = 3;
  double pole_margin = 0.1;
};

/// Expected cluster of Gamma (and of Gamma~) for symbols with a known spectrum.
struct PredictedCluster {
  double s = 0.0;
  int multiplicity_h = 0;  // dim E_H(s)
  int multiplicity_k = 0;  // dim E_K(s)
  Dominance dominance = Dominance::H;
};

/// u = (s^2 - s~^2) psi / (s - s~ z psi psi~), s > s~ > 0.
RationalFunction two_sv_symbol(double s, double s_tilde, const BlaschkeProduct& psi, const BlaschkeProduct& psi_tilde);
/// {(s, deg psi + 1 | deg psi), (s~, deg psi~ | deg psi~ + 1)}.
std::vector<PredictedCluster> two_sv_prediction(double s, double s_tilde, const BlaschkeProduct& psi,
                                                const BlaschkeProduct& psi_tilde);

RationalFunction inner_symbol(const BlaschkeProduct& theta);
std::vector<PredictedCluster> inner_prediction(const BlaschkeProduct& theta);

/// Random numerator (degree < `degree`) over `degree` poles with
/// modulus in [1 + margin, 3 + margin]. Reproducible from the seed.
RationalFunction random_rational_symbol(std::uint64_t seed, int degree, double pole_margin = 0.1);
/// Real coefficients: real poles and conjugate pairs, real numerator.
RationalFunction random_real_rational_symbol(std::uint64_t seed, int degree, double pole_margin = 0.1);

/// Random Blaschke product with zeros of modulus <= max_modulus and a random phase.
BlaschkeProduct random_blaschke(std::uint64_t seed, int degree, double max_modulus = 0.7);

/// Degree used by sweeps for a given seed (1..4).
int sweep_degree(std::uint64_t seed);

RationalFunction build_symbol(const SymbolSpec& spec);
/// Empty when the spectrum is not known in closed form.
std::vector<PredictedCluster> predicted_spectrum(const SymbolSpec& spec);

/// The fixed family used for oracle tests: psi, psi~ of degrees 0..3 with
/// s = 2, s~ = 1, indexed by degree.
BlaschkeProduct oracle_psi(int degree);
BlaschkeProduct oracle_psi_tilde(int degree);

}  // namespace hankel_lab
