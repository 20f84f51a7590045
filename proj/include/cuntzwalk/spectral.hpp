#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "json.hpp"
#include "cuntzwalk/walk_model.hpp"

namespace cuntz {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

/// Scale R, digits B, frequencies L and weights alpha_l (one per frequency).
struct SpectralSystem {
  std::int64_t scale = 2;
  std::vector<std::int64_t> digits;
  std::vector<std::int64_t> frequencies;
  std::vector<Complex> weights;
  /// Attestation of the no-overlap condition; see check_assumptions.
  std::optional<bool> no_overlap;
};

/// {"R": 4, "B": [0, 2], "L": [0, 1], "alpha": [{"re": 1, "im": 0}, ...],
///  "no_overlap": true}. "alpha" defaults to all ones, "no_overlap" is optional.
SpectralSystem spectral_from_json(const nlohmann::json& doc);
nlohmann::json spectral_to_json(const SpectralSystem& sys);

struct AssumptionReport {
  bool well_formed = true;
  bool alpha_zero_is_one = false;
  /// max |T^*T - I| for T(l, b) = e^{2 pi i l b / R} alpha_l / sqrt(N).
  double isometry_residual = 0.0;
  bool isometry_ok = false;
  bool no_overlap = false;
  /// "attested", "digits distinct mod R", or "unattested".
  std::string no_overlap_basis;
  std::vector<std::string> problems;

  bool passed() const { return problems.empty(); }
};

/// Never throws; problems are listed in the report. No-overlap is taken from
/// the attestation when present, else assumed when the digits are distinct
/// mod R, else reported as a problem.
AssumptionReport check_assumptions(const SpectralSystem& sys, double tol = 1e-10);

/// m_B(x) = (1/N) sum_b e^{2 pi i b x}; exact phases for rational x.
Complex m_b(const SpectralSystem& sys, const Rational& x);
Complex m_b(const SpectralSystem& sys, double x);

/// g_l(t) = (t - l) / R.
Rational g_map(const SpectralSystem& sys, const Rational& t, std::int64_t l);

struct MinSetTransition {
  std::size_t frequency = 0;  // index into sys.frequencies
  std::size_t to = 0;         // index into MinSet::points
};

struct MinSet {
  /// Ascending; points.front() is the representative c(M).
  std::vector<Rational> points;
  /// Possible transitions from each point.
  std::vector<std::vector<MinSetTransition>> transitions;

  const Rational& representative() const { return points.front(); }
};

/// Finite minimal invariant sets of the maps g_l, ascending by representative.
/// Throws InputError when the assumptions fail.
std::vector<MinSet> find_min_sets(const SpectralSystem& sys);

/// Walk on the points of a min-set with labels the frequencies and
/// alpha_{t,l} = conj(alpha_l) on possible transitions.
LabeledWalk export_min_set_walk(const SpectralSystem& sys, const MinSet& m);

struct FrameElement {
  Rational frequency;
  Complex coefficient;
  /// Index into the min-set list and the word l_0 ... l_k (frequency indices).
  std::size_t min_set = 0;
  std::vector<std::size_t> word;
};

/// Frame elements from words of length 0..depth that do not end in a cycle
/// word for the representative, per min-set, ordered by min-set, word length,
/// then lexicographic word. Repeated frequencies are kept.
std::vector<FrameElement> frame_frequencies(const SpectralSystem& sys,
                                            const std::vector<MinSet>& min_sets, std::size_t depth);

/// Truncated product prod_{k=1}^{K'} m_B(xi / R^k) with
/// K' = max(K, ceil(log_R |xi|) + K).
Complex mu_hat(const SpectralSystem& sys, double xi, std::size_t k = 40);

struct ParsevalPoint {
  double t = 0.0;
  /// partial[d] sums |coefficient|^2 |mu_hat(t - frequency)|^2 over frame
  /// elements from words of length <= d.
  std::vector<double> partial;
};

std::vector<ParsevalPoint> verify_parseval(const SpectralSystem& sys, const std::vector<double>& points,
                                           std::size_t depth, std::size_t k = 40,
                                           std::size_t threads = 1);

}  // namespace cuntz
