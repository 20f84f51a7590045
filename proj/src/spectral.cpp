#include "cuntzwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <thread>

#include "cuntzwalk/graph.hpp"
#include "cuntzwalk/walk_io.hpp"

namespace cuntz {

namespace {

using nlohmann::json;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// e^{2 pi i r / q} for integers, 0 <= r < q.
Complex root_of_unity(std::int64_t r, std::int64_t q) {
  if (r == 0) return {1.0, 0.0};
  if (2 * r == q) return {-1.0, 0.0};
  if (4 * r == q) return {0.0, 1.0};
  if (4 * r == 3 * q) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

std::int64_t mod(__int128 a, std::int64_t q) {
  __int128 r = a % q;
  if (r < 0) r += q;
  return static_cast<std::int64_t>(r);
}

bool integer_multiples(const SpectralSystem& sys, const Rational& t) {
  for (auto b : sys.digits) {
    if (mod(static_cast<__int128>(b) * t.numerator(), t.denominator()) != 0) return false;
  }
  return true;
}

std::vector<std::int64_t> int_list(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing field \"") + key + "\"");
  if (!it->is_array()) throw InputError(std::string("\"") + key + "\" must be an array");
  std::vector<std::int64_t> out;
  for (const auto& v : *it) {
    if (!v.is_number_integer()) throw InputError(std::string("\"") + key + "\" must hold integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

}  // namespace

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

SpectralSystem spectral_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("system document must be a JSON object");
  SpectralSystem sys;
  auto r = doc.find("R");
  if (r == doc.end() || !r->is_number_integer()) throw InputError("\"R\" must be an integer");
  sys.scale = r->get<std::int64_t>();
  sys.digits = int_list(doc, "B");
  sys.frequencies = int_list(doc, "L");
  auto a = doc.find("alpha");
  if (a == doc.end()) {
    sys.weights.assign(sys.frequencies.size(), Complex{1.0, 0.0});
  } else {
    if (!a->is_array()) throw InputError("\"alpha\" must be an array");
    for (const auto& v : *a) sys.weights.push_back(complex_from_json(v));
  }
  auto o = doc.find("no_overlap");
  if (o != doc.end()) {
    if (!o->is_boolean()) throw InputError("\"no_overlap\" must be a boolean");
    sys.no_overlap = o->get<bool>();
  }
  return sys;
}

json spectral_to_json(const SpectralSystem& sys) {
  json alpha = json::array();
  for (auto w : sys.weights) alpha.push_back(complex_to_json(w));
  json out{{"R", sys.scale}, {"B", sys.digits}, {"L", sys.frequencies}, {"alpha", alpha}};
  if (sys.no_overlap) out["no_overlap"] = *sys.no_overlap;
  return out;
}

AssumptionReport check_assumptions(const SpectralSystem& sys, double tol) {
  AssumptionReport rep;
  auto problem = [&](std::string msg) {
    rep.problems.push_back(std::move(msg));
  };
  auto structural = [&](std::string msg) {
    rep.well_formed = false;
    problem(std::move(msg));
  };

  if (sys.scale < 2) structural("scale R must be at least 2");
  if (sys.digits.empty() || std::find(sys.digits.begin(), sys.digits.end(), 0) == sys.digits.end()) {
    structural("digit set must contain 0");
  }
  if (std::set<std::int64_t>(sys.digits.begin(), sys.digits.end()).size() != sys.digits.size()) {
    structural("digits must be distinct");
  }
  if (std::none_of(sys.digits.begin(), sys.digits.end(), [](auto b) { return b != 0; })) {
    structural("digit set needs a nonzero digit");
  }
  const auto zero = std::find(sys.frequencies.begin(), sys.frequencies.end(), 0);
  if (zero == sys.frequencies.end()) structural("frequency set must contain 0");
  if (std::set<std::int64_t>(sys.frequencies.begin(), sys.frequencies.end()).size() !=
      sys.frequencies.size()) {
    structural("frequencies must be distinct");
  }
  if (sys.weights.size() != sys.frequencies.size()) structural("need one weight per frequency");
  for (auto w : sys.weights) {
    if (std::abs(w) < kZeroThreshold) {
      structural("weights must be nonzero");
      break;
    }
  }
  if (!rep.well_formed) return rep;

  const Complex a0 = sys.weights[static_cast<std::size_t>(zero - sys.frequencies.begin())];
  rep.alpha_zero_is_one = std::abs(a0 - 1.0) <= tol;
  if (!rep.alpha_zero_is_one) problem("weight of frequency 0 must be 1");

  const auto m = static_cast<Eigen::Index>(sys.frequencies.size());
  const auto n = static_cast<Eigen::Index>(sys.digits.size());
  DenseMatrix t(m, n);
  for (Eigen::Index l = 0; l < m; ++l) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const std::int64_t r = mod(static_cast<__int128>(sys.frequencies[static_cast<std::size_t>(l)]) *
                                     sys.digits[static_cast<std::size_t>(b)],
                                 sys.scale);
      t(l, b) = root_of_unity(r, sys.scale) * sys.weights[static_cast<std::size_t>(l)] /
                std::sqrt(static_cast<double>(n));
    }
  }
  rep.isometry_residual = (t.adjoint() * t - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  rep.isometry_ok = rep.isometry_residual <= tol;
  if (!rep.isometry_ok) problem("frequency-digit matrix is not an isometry");

  if (sys.no_overlap) {
    rep.no_overlap = *sys.no_overlap;
    rep.no_overlap_basis = "attested";
    if (!rep.no_overlap) problem("no-overlap condition attested false");
  } else {
    std::set<std::int64_t> residues;
    for (auto b : sys.digits) residues.insert(mod(b, sys.scale));
    if (residues.size() == sys.digits.size()) {
      rep.no_overlap = true;
      rep.no_overlap_basis = "digits distinct mod R";
    } else {
      rep.no_overlap_basis = "unattested";
      problem("no-overlap condition not attested and digits are not distinct mod R");
    }
  }
  return rep;
}

Complex m_b(const SpectralSystem& sys, const Rational& x) {
  Complex sum{0.0, 0.0};
  for (auto b : sys.digits) {
    sum += root_of_unity(mod(static_cast<__int128>(b) * x.numerator(), x.denominator()), x.denominator());
  }
  return sum / static_cast<double>(sys.digits.size());
}

Complex m_b(const SpectralSystem& sys, double x) {
  Complex sum{0.0, 0.0};
  for (auto b : sys.digits) {
    double phase = static_cast<double>(b) * x;
    phase -= std::floor(phase);
    sum += std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return sum / static_cast<double>(sys.digits.size());
}

Rational g_map(const SpectralSystem& sys, const Rational& t, std::int64_t l) {
  return (t - l) / sys.scale;
}

std::vector<MinSet> find_min_sets(const SpectralSystem& sys) {
  const auto rep = check_assumptions(sys);
  if (!rep.passed()) throw InputError("spectral system fails its assumptions: " + rep.problems.front());

  std::int64_t g = 0;
  for (auto b : sys.digits) g = std::gcd(g, b < 0 ? -b : b);
  const auto [lmin, lmax] = std::minmax_element(sys.frequencies.begin(), sys.frequencies.end());
  // t in (1/g)Z with -max L / (R-1) <= t <= -min L / (R-1).
  const std::int64_t first = ceil_div(-*lmax * g, sys.scale - 1);
  const std::int64_t last = floor_div(-*lmin * g, sys.scale - 1);
  if (last - first > 1000000) throw InputError("too many candidate points");

  std::vector<Rational> candidates;
  std::map<Rational, std::size_t> index;
  for (std::int64_t k = first; k <= last; ++k) {
    index[Rational(k, g)] = candidates.size();
    candidates.emplace_back(k, g);
  }

  Digraph graph(candidates.size());
  std::vector<std::vector<MinSetTransition>> moves(candidates.size());
  std::vector<bool> leaky(candidates.size(), false);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (std::size_t l = 0; l < sys.frequencies.size(); ++l) {
      const Rational to = g_map(sys, candidates[c], sys.frequencies[l]);
      if (std::abs(m_b(sys, to)) <= 1e-9) continue;
      auto it = index.find(to);
      if (it == index.end()) {
        leaky[c] = true;
        continue;
      }
      moves[c].push_back({l, it->second});
      graph[c].push_back(it->second);
    }
  }

  std::vector<MinSet> out;
  for (const auto& members : sink_components(graph)) {
    bool ok = true;
    for (auto c : members) ok = ok && !leaky[c] && integer_multiples(sys, candidates[c]);
    if (!ok) continue;
    MinSet m;
    std::map<std::size_t, std::size_t> local;
    for (auto c : members) {
      local[c] = m.points.size();
      m.points.push_back(candidates[c]);
    }
    for (auto c : members) {
      std::vector<MinSetTransition> t;
      for (const auto& mv : moves[c]) t.push_back({mv.frequency, local.at(mv.to)});
      m.transitions.push_back(std::move(t));
    }
    out.push_back(std::move(m));
  }
  // Candidates are ascending, so members and sets come out ascending.
  return out;
}

LabeledWalk export_min_set_walk(const SpectralSystem& sys, const MinSet& m) {
  std::vector<std::string> vertices, labels;
  for (const auto& p : m.points) vertices.push_back(to_string(p));
  for (auto l : sys.frequencies) labels.push_back(std::to_string(l));
  std::vector<EdgeSpec> edges;
  for (std::size_t p = 0; p < m.points.size(); ++p) {
    for (const auto& t : m.transitions[p]) {
      edges.push_back({vertices[p], labels[t.frequency], vertices[t.to],
                       std::conj(sys.weights[t.frequency])});
    }
  }
  return LabeledWalk(vertices, labels, edges);
}

std::vector<FrameElement> frame_frequencies(const SpectralSystem& sys,
                                            const std::vector<MinSet>& min_sets, std::size_t depth) {
  // Rough magnitude guard so exact arithmetic stays inside 64 bits.
  double reach = 1.0;
  for (auto l : sys.frequencies) reach = std::max(reach, std::abs(static_cast<double>(l)));
  for (const auto& m : min_sets) {
    reach = std::max(reach, std::abs(boost::rational_cast<double>(m.representative())) + 1.0);
  }
  const double bound = std::pow(static_cast<double>(sys.scale), static_cast<double>(depth + 2)) * reach;
  if (bound > 1e15) throw InputError("frame depth too large for exact frequencies");

  struct Partial {
    std::vector<std::size_t> word;
    Rational frequency;    // l_0 + R l_1 + ... + R^k l_k
    std::int64_t scale_power = 1;  // R^{k+1}
    Complex coefficient;
    std::vector<Rational> suffix_points;  // g applied to c along each suffix
  };

  std::vector<FrameElement> out;
  for (std::size_t s = 0; s < min_sets.size(); ++s) {
    const Rational c = min_sets[s].representative();
    std::vector<Partial> level{{{}, Rational(0), 1, Complex{1.0, 0.0}, {}}};
    for (std::size_t len = 0;; ++len) {
      for (const auto& p : level) {
        const bool ends_in_cycle =
            std::any_of(p.suffix_points.begin(), p.suffix_points.end(),
                        [&](const Rational& x) { return x == c; });
        if (!ends_in_cycle) {
          out.push_back({p.frequency + c * p.scale_power, p.coefficient, s, p.word});
        }
      }
      if (len == depth) break;
      std::vector<Partial> next;
      for (const auto& p : level) {
        for (std::size_t l = 0; l < sys.frequencies.size(); ++l) {
          Partial q;
          q.word = p.word;
          q.word.push_back(l);
          q.frequency = p.frequency + Rational(sys.frequencies[l]) * p.scale_power;
          q.scale_power = p.scale_power * sys.scale;
          q.coefficient = p.coefficient * sys.weights[l];
          for (const auto& x : p.suffix_points) q.suffix_points.push_back(g_map(sys, x, sys.frequencies[l]));
          q.suffix_points.push_back(g_map(sys, c, sys.frequencies[l]));
          next.push_back(std::move(q));
        }
      }
      level = std::move(next);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const FrameElement& a, const FrameElement& b) {
    if (a.min_set != b.min_set) return a.min_set < b.min_set;
    return a.word.size() < b.word.size();
  });
  return out;
}

Complex mu_hat(const SpectralSystem& sys, double xi, std::size_t k) {
  if (k < 1) throw InputError("mu_hat needs at least one factor");
  std::size_t factors = k;
  const double mag = std::abs(xi);
  if (mag > 1.0) {
    const double extra = std::ceil(std::log(mag) / std::log(static_cast<double>(sys.scale)));
    factors = std::max(k, static_cast<std::size_t>(extra) + k);
  }
  Complex prod{1.0, 0.0};
  double x = xi;
  for (std::size_t j = 1; j <= factors; ++j) {
    x /= static_cast<double>(sys.scale);
    prod *= m_b(sys, x);
  }
  return prod;
}

std::vector<ParsevalPoint> verify_parseval(const SpectralSystem& sys, const std::vector<double>& points,
                                           std::size_t depth, std::size_t k, std::size_t threads) {
  const auto min_sets = find_min_sets(sys);
  const auto frame = frame_frequencies(sys, min_sets, depth);

  std::vector<ParsevalPoint> out(points.size());
  auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t p = from; p < to; ++p) {
      std::vector<double> by_length(depth + 1, 0.0);
      for (const auto& e : frame) {
        const double xi = points[p] - boost::rational_cast<double>(e.frequency);
        by_length[e.word.size()] += std::norm(e.coefficient) * std::norm(mu_hat(sys, xi, k));
      }
      out[p].t = points[p];
      double running = 0.0;
      for (double v : by_length) {
        running += v;
        out[p].partial.push_back(running);
      }
    }
  };

  threads = std::max<std::size_t>(1, std::min(threads, points.size()));
  if (threads == 1) {
    work(0, points.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (points.size() + threads - 1) / threads;
    for (std::size_t from = 0; from < points.size(); from += chunk) {
      pool.emplace_back(work, from, std::min(points.size(), from + chunk));
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace cuntz
