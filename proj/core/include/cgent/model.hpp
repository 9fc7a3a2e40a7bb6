#pragma once

#include <cstdint>
#include <vector>

#include "cgent/binning.hpp"
#include "cgent/ingest.hpp"
#include "cgent/variables.hpp"

namespace cgent {

// Pure two-photon state with momentum wavefunction
//   Psi(p1, p2) = A exp(-(p1 + p2)^2 / (4 sp^2)) exp(-(p1 - p2)^2 / (4 sm^2)),
// so p+ and p- are independent zero-mean normals with std sp and sm.
class GaussianTwoPhotonState {
 public:
  // Throws InvalidParameter unless both widths lie in [1e-150, 1e150].
  GaussianTwoPhotonState(double sigma_plus, double sigma_minus);

  double sigma_plus() const { return sigma_plus_; }
  double sigma_minus() const { return sigma_minus_; }

  // A with |A|^2 = 1 / (pi sp sm), normalizing |Psi|^2 over dp1 dp2.
  double normalization_constant() const;

 private:
  double sigma_plus_;
  double sigma_minus_;
};

struct MarginalSpec {
  Variable variable;
  double mean;
  double std;
};

// R+, R-, S+, S- of the state. x± has std 1/sigma± (hbar = 1, [x±, p±] = 2i).
struct GlobalMarginals {
  MarginalSpec x_plus;
  MarginalSpec x_minus;
  MarginalSpec p_plus;
  MarginalSpec p_minus;

  const MarginalSpec& get(Variable v) const;
};

GlobalMarginals exact_marginals(const GaussianTwoPhotonState& state);

// Interval probabilities of a normal marginal. The returned function throws
// InvalidParameter for a > b.
IntervalMass bin_mass_oracle(const MarginalSpec& m);

// Separable within the family iff sigma+ == sigma- (relative tolerance 1e-12).
bool classify_separable(const GaussianTwoPhotonState& state);

// Square detector-index window [-half_width, half_width]^2 of a simulated scan.
struct ScanWindow {
  int half_width;
};

// Probability that (z1, z2) falls in the rectangle [a1,b1] x [a2,b2] for zero
// mean normals with std s1, s2 and correlation rho.
double bivariate_normal_rectangle(double a1, double b1, double a2, double b2, double s1,
                                  double s2, double rho);

// Cell probabilities of the scan (row-major over i, then j). Detector index i
// sits at source coordinate i * w, with w the base global bin width of the
// arm, so index sums/differences land on the global grid centers. Throws
// TruncationError when the window captures less than `min_captured`.
std::vector<double> joint_cell_masses(const GaussianTwoPhotonState& state,
                                      const OpticalGeometry& geometry, VariablePair pair,
                                      ScanWindow window, double min_captured = 0.999);

// Independent Poisson counts per cell with mean total * cell mass.
// Deterministic for a given seed.
JointCounts sample_joint_counts(const GaussianTwoPhotonState& state,
                                const OpticalGeometry& geometry, VariablePair pair,
                                ScanWindow window, double total_expected_counts,
                                std::uint64_t seed);

// Half-width (in detector indices) covering `n_std` single-photon standard
// deviations of the arm.
ScanWindow auto_scan_window(const GaussianTwoPhotonState& state,
                            const OpticalGeometry& geometry, VariablePair pair,
                            double n_std = 6.0);

}  // namespace cgent
