#include "cuntzwalk/cli.hpp"

#include <algorithm>
#include <charconv>
#include <string_view>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "cuntzwalk/coisometry.hpp"
#include "cuntzwalk/dilation.hpp"
#include "cuntzwalk/fixtures.hpp"
#include "cuntzwalk/intertwiners.hpp"
#include "cuntzwalk/product_analysis.hpp"
#include "cuntzwalk/report_json.hpp"
#include "cuntzwalk/spectral.hpp"
#include "cuntzwalk/walk_io.hpp"

namespace cuntz::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : InputError {
  using InputError::InputError;
};

/// Cross-check failure; carries the report that documents it.
struct MismatchError : Error {
  MismatchError(const std::string& what, json report) : Error(what), report(std::move(report)) {}
  json report;
};

struct Config {
  double tol = 1e-10;
  std::optional<std::size_t> depth;
  std::size_t nmax = 60;
  std::string format = "json";
  bool format_given = false;
  std::string out;
};

struct Output {
  std::string text;
  int code = kOk;
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::size_t depth_or(const Config& cfg, std::size_t fallback) {
  const std::size_t d = cfg.depth.value_or(fallback);
  if (d < 1) throw UsageError("--depth must be at least 1");
  return d;
}

std::size_t thread_cap() {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CUNTZ_WALK_THREADS")) {
    const std::string_view text(env);
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || v == 0) {
      throw UsageError("CUNTZ_WALK_THREADS must be a positive integer");
    }
    threads = std::min(threads, v);
  }
  return threads;
}

SpectralSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return spectral_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

json pair_json(const LabeledWalk& a, const LabeledWalk& b, NodePair p) {
  return json::array({a.vertex_id(p.first), b.vertex_id(p.second)});
}

// ---- analyze ---------------------------------------------------------------

Output analyze(const Config& cfg, const std::string& path, const std::string& path2) {
  const LabeledWalk w = load_walk_file(path);
  const LabeledWalk w2 = path2.empty() ? w : load_walk_file(path2);
  const auto v1 = validate_walk(w, kNormalizationTolerance);
  const auto v2 = validate_walk(w2, kNormalizationTolerance);

  const ProductGraph pg(w, w2);
  const auto report = analyze_product(pg);

  json passage = json::array();
  std::ostringstream csv;
  csv << "first,second,n,P\n";
  bool decays = true;
  for (std::size_t id = 0; id < pg.num_nodes(); ++id) {
    const NodePair p = pg.node(id);
    const auto series = first_passage(pg, report, p, cfg.nmax);
    for (std::size_t n = 0; n < series.size(); ++n) {
      csv << w.vertex_id(p.first) << ',' << w2.vertex_id(p.second) << ',' << n << ','
          << num(series[n]) << '\n';
      if (n > 0 && series[n] > series[n - 1] + 1e-15) decays = false;
    }
    passage.push_back({{"node", pair_json(w, w2, p)}, {"P", series}});
  }

  auto verdicts = [](const LabeledWalk& walk) {
    const bool connected = is_connected(walk);
    const bool separating = is_separating(walk);
    return json{{"connected", connected},
                {"separating", separating},
                {"verdict", connected && separating ? "irreducible (sufficient condition)"
                                                    : "inconclusive"}};
  };

  json doc{{"validation", {to_json(v1, w)}},
           {"product", {{"nodes", pg.num_nodes()}, {"minimal_sets", to_json(report, pg)}}},
           {"first_passage", {{"horizon", cfg.nmax}, {"non_increasing", decays}, {"table", passage}}},
           {"walks", {verdicts(w)}}};
  if (!path2.empty()) {
    doc["validation"].push_back(to_json(v2, w2));
    doc["walks"].push_back(verdicts(w2));
  }

  auto fatal = [](const ValidationReport& r) {
    for (const auto& v : r.violations) {
      if (v.kind != ViolationKind::OutInjectivity) return true;
    }
    return false;
  };
  const int code = fatal(v1) || fatal(v2) || !decays ? kVerificationFailure : kOk;
  if (cfg.format == "csv") return {csv.str(), code};
  return {doc.dump(2) + "\n", code};
}

// ---- dilate ----------------------------------------------------------------

void dump_dilation(const DilationOperators& ops, const fs::path& dir) {
  fs::create_directories(dir);
  auto write_triplets = [](const SparseMatrix& m, const fs::path& file) {
    std::ofstream out(file);
    if (!out) throw InputError("cannot write " + file.string());
    out << "row,col,re,im\n";
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
        out << it.row() << ',' << it.col() << ',' << num(it.value().real()) << ','
            << num(it.value().imag()) << '\n';
      }
    }
  };
  json labels = json::array();
  for (LabelIndex l = 0; l < ops.num_labels(); ++l) {
    const std::string s = "S_" + std::to_string(l) + ".csv";
    const std::string s_star = "S_" + std::to_string(l) + "_star.csv";
    write_triplets(ops.s[l], dir / s);
    write_triplets(ops.s_star[l], dir / s_star);
    labels.push_back({{"label", ops.walk.label_id(l)}, {"S", s}, {"S_star", s_star}});
  }
  json basis = json::array();
  const std::size_t dim = ops.space.dimension(ops.depth + 1);
  for (std::size_t k = 0; k < dim; ++k) {
    basis.push_back({{"index", k},
                     {"vertex", ops.walk.vertex_id(ops.space.vertex_of(k))},
                     {"word", ops.space.word_of(k)}});
  }
  json index{{"depth", ops.depth},
             {"S_shape", {ops.space.dimension(ops.depth + 1), ops.dimension()}},
             {"S_star_shape", {ops.dimension(), ops.space.dimension(ops.depth + 1)}},
             {"labels", labels},
             {"basis", basis}};
  std::ofstream out(dir / "index.json");
  if (!out) throw InputError("cannot write " + (dir / "index.json").string());
  out << index.dump(2) << '\n';
}

Output dilate(const Config& cfg, const std::string& path, const std::string& dump_dir) {
  const std::size_t depth = depth_or(cfg, 3);
  const LabeledWalk w = load_walk_file(path);
  const auto ops = build_dilation(w, depth);
  const auto report = verify_cuntz(ops, cfg.tol);
  const std::size_t rank = cyclicity_rank(ops);
  const bool full = rank == ops.dimension();
  if (!dump_dir.empty()) dump_dilation(ops, dump_dir);

  const int code = report.passed() && full ? kOk : kVerificationFailure;
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "quantity,value\n"
        << "dimension," << ops.dimension() << '\n'
        << "isometry_residual," << num(report.isometry_residual) << '\n'
        << "range_residual," << num(report.range_residual) << '\n'
        << "compression_residual," << num(report.compression_residual) << '\n'
        << "adjoint_residual," << num(report.adjoint_residual) << '\n'
        << "cyclicity_rank," << rank << '\n';
    return {csv.str(), code};
  }
  json doc{{"depth", depth},
           {"dimension", ops.dimension()},
           {"residuals", to_json(report)},
           {"cyclicity_rank", rank},
           {"full_rank", full}};
  return {doc.dump(2) + "\n", code};
}

// ---- intertwine / commutant -----------------------------------------------

std::string basis_csv(const std::vector<DenseMatrix>& basis) {
  std::ostringstream csv;
  csv << "element,row,col,re,im\n";
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (Eigen::Index c = 0; c < basis[k].cols(); ++c) {
      for (Eigen::Index r = 0; r < basis[k].rows(); ++r) {
        csv << k << ',' << r << ',' << c << ',' << num(basis[k](r, c).real()) << ','
            << num(basis[k](r, c).imag()) << '\n';
      }
    }
  }
  return csv.str();
}

json basis_json(const std::vector<DenseMatrix>& basis) {
  json out = json::array();
  for (const auto& m : basis) out.push_back(matrix_to_json(m));
  return out;
}

json intertwine_doc(const Config& cfg, const LabeledWalk& w, const LabeledWalk& w2,
                    bool inject_fault, IntertwinerSpace& space) {
  space = intertwiner_basis(w, w2);
  if (inject_fault && !space.basis.empty()) {
    // Deliberately corrupt one entry so the oracle comparison must fail.
    space.basis.front()(0, 0) += 0.5;
  }
  const ProductGraph pg(w, w2);
  json reps = json::array();
  for (auto k : space.balanced_sets) {
    reps.push_back(pair_json(w, w2, space.report.sets[k].representative));
  }
  json doc{{"dimension", space.dimension()},
           {"minimal_sets", space.report.sets.size()},
           {"representatives", reps},
           {"basis", basis_json(space.basis)}};

  const std::size_t unknowns = w.num_vertices() * w2.num_vertices();
  if (unknowns <= OracleOptions{}.max_unknowns) {
    const auto oracle = fixed_point_oracle(w, w2);
    const auto cmp = compare_with_oracle(space, oracle);
    doc["oracle"] = to_json(cmp);
    if (!cmp.agree(std::max(cfg.tol, 1e-8))) {
      doc["oracle_basis"] = basis_json(oracle.basis);
      throw MismatchError("structured intertwiner basis disagrees with the dense oracle", doc);
    }
  } else {
    doc["oracle"] = {{"skipped", "more than " + std::to_string(OracleOptions{}.max_unknowns) +
                                     " unknowns"}};
  }
  return doc;
}

Output intertwine(const Config& cfg, const std::string& path, const std::string& path2,
                  bool inject_fault) {
  const LabeledWalk w = load_walk_file(path);
  const LabeledWalk w2 = load_walk_file(path2);
  IntertwinerSpace space{w, w2, {}, {}, {}};
  const json doc = intertwine_doc(cfg, w, w2, inject_fault, space);
  if (cfg.format == "csv") return {basis_csv(space.basis), kOk};
  return {doc.dump(2) + "\n", kOk};
}

Output commutant(const Config& cfg, const std::string& path, bool inject_fault) {
  const LabeledWalk w = load_walk_file(path);
  IntertwinerSpace space{w, w, {}, {}, {}};
  json doc = intertwine_doc(cfg, w, w, inject_fault, space);

  // Structure constants of the commutant product in the basis.
  const std::size_t dim = space.dimension();
  if (dim > 0) {
    DenseMatrix cols(space.basis.front().size(), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
      cols.col(static_cast<Eigen::Index>(k)) =
          Eigen::Map<const DenseVector>(space.basis[k].data(), space.basis[k].size());
    }
    const Eigen::ColPivHouseholderQR<DenseMatrix> qr(cols);
    json products = json::array();
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < dim; ++b) {
        const DenseMatrix p = commutant_product(w, space.basis[a], space.basis[b]);
        const DenseVector v = Eigen::Map<const DenseVector>(p.data(), p.size());
        const DenseVector coeffs = qr.solve(v);
        json c = json::array();
        for (Eigen::Index k = 0; k < coeffs.size(); ++k) c.push_back(complex_to_json(coeffs(k)));
        products.push_back({{"left", a},
                            {"right", b},
                            {"coordinates", c},
                            {"residual", (cols * coeffs - v).norm()}});
      }
    }
    doc["products"] = products;
  }
  if (cfg.format == "csv") return {basis_csv(space.basis), kOk};
  return {doc.dump(2) + "\n", kOk};
}

// ---- spectral --------------------------------------------------------------

Output spectral_check(const Config& cfg, const SpectralSystem& sys) {
  const auto rep = check_assumptions(sys, cfg.tol);
  const int code = rep.passed() ? kOk : kVerificationFailure;
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "quantity,value\n"
        << "passed," << rep.passed() << '\n'
        << "isometry_residual," << num(rep.isometry_residual) << '\n'
        << "no_overlap," << rep.no_overlap << '\n';
    return {csv.str(), code};
  }
  return {to_json(rep).dump(2) + "\n", code};
}

Output spectral_minsets(const Config& cfg, const SpectralSystem& sys) {
  const auto sets = find_min_sets(sys);
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "set,point\n";
    for (std::size_t k = 0; k < sets.size(); ++k) {
      for (const auto& p : sets[k].points) csv << k << ',' << to_string(p) << '\n';
    }
    return {csv.str(), kOk};
  }
  json doc = json::array();
  for (const auto& m : sets) doc.push_back(to_json(m, sys));
  return {json{{"min_sets", doc}}.dump(2) + "\n", kOk};
}

Output spectral_walk(const SpectralSystem& sys, std::size_t which) {
  const auto sets = find_min_sets(sys);
  if (which >= sets.size()) {
    throw UsageError("--set " + std::to_string(which) + " out of range; there are " +
                     std::to_string(sets.size()) + " min-sets");
  }
  return {save_walk(export_min_set_walk(sys, sets[which])) + "\n", kOk};
}

Output spectral_frame(const Config& cfg, const SpectralSystem& sys) {
  const std::size_t depth = depth_or(cfg, 10);
  const auto frame = frame_frequencies(sys, find_min_sets(sys), depth);
  // The frame listing is a table, so it defaults to CSV.
  if (cfg.format_given && cfg.format == "json") {
    json list = json::array();
    for (const auto& e : frame) {
      list.push_back({{"frequency", to_string(e.frequency)},
                      {"coefficient", complex_to_json(e.coefficient)},
                      {"min_set", e.min_set},
                      {"word", e.word}});
    }
    return {json{{"depth", depth}, {"elements", list}}.dump(2) + "\n", kOk};
  }
  std::ostringstream csv;
  csv << "frequency,coeff_re,coeff_im\n";
  for (const auto& e : frame) {
    csv << to_string(e.frequency) << ',' << num(e.coefficient.real()) << ','
        << num(e.coefficient.imag()) << '\n';
  }
  return {csv.str(), kOk};
}

Output spectral_parseval(const Config& cfg, const SpectralSystem& sys,
                         const std::vector<double>& points, std::size_t terms) {
  if (points.empty()) throw UsageError("parseval needs --points");
  const std::size_t depth = depth_or(cfg, 10);
  const auto result = verify_parseval(sys, points, depth, terms, thread_cap());

  bool bounded = true;
  for (const auto& p : result) {
    for (std::size_t d = 0; d < p.partial.size(); ++d) {
      if (p.partial[d] > 1.0 + 1e-6) bounded = false;
      if (d > 0 && p.partial[d] < p.partial[d - 1]) bounded = false;
    }
  }
  const int code = bounded ? kOk : kVerificationFailure;
  if (cfg.format == "json") {
    json list = json::array();
    for (const auto& p : result) list.push_back({{"t", p.t}, {"partial", p.partial}});
    return {json{{"depth", depth}, {"terms", terms}, {"points", list}}.dump(2) + "\n", code};
  }
  std::ostringstream csv;
  csv << "t,depth,partial_sum\n";
  for (const auto& p : result) {
    for (std::size_t d = 0; d < p.partial.size(); ++d) {
      csv << num(p.t) << ',' << d << ',' << num(p.partial[d]) << '\n';
    }
  }
  return {csv.str(), code};
}

// ---- verify-all ------------------------------------------------------------

Output verify_all(const Config& cfg) {
  json checks = json::array();
  bool ok = true;
  bool mismatch = false;
  auto record = [&](const std::string& name, bool passed, json detail) {
    checks.push_back({{"name", name}, {"passed", passed}, {"detail", std::move(detail)}});
    ok = ok && passed;
  };
  auto dims = [&](const std::string& name, const LabeledWalk& a, const LabeledWalk& b,
                  std::size_t expected) {
    const auto space = intertwiner_basis(a, b);
    const auto cmp = compare_with_oracle(space, fixed_point_oracle(a, b));
    if (!cmp.agree()) mismatch = true;
    record(name, cmp.agree() && space.dimension() == expected,
           {{"expected", expected}, {"comparison", to_json(cmp)}});
  };

  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 3}, {4, 6}, {6, 9}}) {
    dims("cyclic " + std::to_string(m) + "x" + std::to_string(n), fixtures::cyclic_walk(m),
         fixtures::cyclic_walk(n), std::gcd(m, n));
  }
  dims("branching commutant", fixtures::branching_walk(), fixtures::branching_walk(), 2);
  dims("two-cycle commutant", fixtures::branching_walk_two_cycle(),
       fixtures::branching_walk_two_cycle(), 3);
  dims("branching to two-cycle", fixtures::branching_walk(), fixtures::branching_walk_two_cycle(), 2);
  dims("phased triangle commutant", fixtures::phased_triangle_walk(),
       fixtures::phased_triangle_walk(), 1);
  dims("uniform triangle commutant", fixtures::uniform_triangle_walk(),
       fixtures::uniform_triangle_walk(), 3);

  const std::size_t depth = depth_or(cfg, 3);
  for (const auto& [name, walk] : fixtures::all_walks()) {
    const auto ops = build_dilation(walk, depth);
    const auto rep = verify_cuntz(ops, cfg.tol);
    const std::size_t rank = cyclicity_rank(ops);
    record("dilation " + name, rep.passed() && rank == ops.dimension(),
           {{"residuals", to_json(rep)}, {"rank", rank}, {"dimension", ops.dimension()}});
  }

  const auto cantor = fixtures::quarter_cantor_system();
  const auto sets = find_min_sets(cantor);
  const bool single_zero = sets.size() == 1 && sets.front().points == std::vector<Rational>{Rational(0)};
  record("quarter Cantor min-sets", single_zero, {{"count", sets.size()}});
  std::vector<Rational> freqs;
  for (const auto& e : frame_frequencies(cantor, sets, 3)) freqs.push_back(e.frequency);
  std::sort(freqs.begin(), freqs.end());
  std::vector<std::string> shown;
  for (const auto& f : freqs) shown.push_back(to_string(f));
  record("quarter Cantor frame depth 3",
         shown == std::vector<std::string>{"0", "1", "4", "5", "16", "17", "20", "21"},
         {{"frequencies", shown}});
  record("unit interval min-sets", find_min_sets(fixtures::unit_interval_system()).size() == 2, {});

  json doc{{"passed", ok}, {"checks", checks}};
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "check,passed\n";
    for (const auto& c : checks) csv << c["name"].get<std::string>() << ',' << c["passed"] << '\n';
    return {csv.str(), mismatch ? kCrossCheckMismatch : (ok ? kOk : kVerificationFailure)};
  }
  return {doc.dump(2) + "\n", mismatch ? kCrossCheckMismatch : (ok ? kOk : kVerificationFailure)};
}

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw InputError("cannot write " + cfg.out);
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cuntz dilations, intertwiners and spectral frames for labeled random walks"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::size_t depth = 0;
  app.add_option("--tol", cfg.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  auto* depth_opt = app.add_option("--depth", depth, "Truncation depth");
  app.add_option("--nmax", cfg.nmax, "Horizon for first-passage tables")->check(CLI::PositiveNumber);
  auto* format_opt =
      app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "Write the report to this file");

  std::string walk1, walk2, system_path, dump_dir;
  bool fault = false;

  auto* a = app.add_subcommand("analyze", "Minimal invariant sets and irreducibility tests");
  a->add_option("walk", walk1, "Walk JSON")->required()->check(CLI::ExistingFile);
  a->add_option("walk2", walk2, "Second walk JSON (defaults to the first)")->check(CLI::ExistingFile);

  auto* d = app.add_subcommand("dilate", "Build and verify the truncated Cuntz dilation");
  d->add_option("walk", walk1, "Walk JSON")->required()->check(CLI::ExistingFile);
  d->add_option("--dump", dump_dir, "Directory for S matrices as triplet CSV plus index.json");

  auto* it = app.add_subcommand("intertwine", "Intertwiner basis between two walks");
  it->add_option("walk", walk1, "Source walk JSON")->required()->check(CLI::ExistingFile);
  it->add_option("walk2", walk2, "Target walk JSON")->required()->check(CLI::ExistingFile);
  it->add_flag("--inject-fault", fault)->group("");

  auto* c = app.add_subcommand("commutant", "Commutant basis and its product table");
  c->add_option("walk", walk1, "Walk JSON")->required()->check(CLI::ExistingFile);
  c->add_flag("--inject-fault", fault)->group("");

  auto* s = app.add_subcommand("spectral", "Self-affine spectral systems");
  s->require_subcommand(1);
  s->fallthrough();
  std::vector<double> points;
  std::size_t which = 0;
  std::size_t terms = 40;
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("system", system_path, "System JSON")->required()->check(CLI::ExistingFile);
  };
  auto* s_check = s->add_subcommand("check", "Check the standing assumptions");
  add_system(s_check);
  auto* s_min = s->add_subcommand("minsets", "Finite minimal invariant sets");
  add_system(s_min);
  auto* s_walk = s->add_subcommand("walk", "Export a min-set as a walk");
  add_system(s_walk);
  s_walk->add_option("--set", which, "Min-set index");
  auto* s_frame = s->add_subcommand("frame", "Parseval frame frequencies");
  add_system(s_frame);
  auto* s_pars = s->add_subcommand("parseval", "Partial Parseval sums at test points");
  add_system(s_pars);
  s_pars->add_option("--points", points, "Test points")->delimiter(',');
  s_pars->add_option("--terms", terms, "Fourier product truncation")->check(CLI::PositiveNumber);

  auto* v = app.add_subcommand("verify-all", "Run the built-in regression checks");

  std::vector<const char*> argv;
  for (const auto& x : args) argv.push_back(x.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (depth_opt->count() > 0) cfg.depth = depth;
  cfg.format_given = format_opt->count() > 0;

  try {
    Output result;
    if (a->parsed()) {
      result = analyze(cfg, walk1, walk2);
    } else if (d->parsed()) {
      result = dilate(cfg, walk1, dump_dir);
    } else if (it->parsed()) {
      result = intertwine(cfg, walk1, walk2, fault);
    } else if (c->parsed()) {
      result = commutant(cfg, walk1, fault);
    } else if (v->parsed()) {
      result = verify_all(cfg);
    } else {
      const SpectralSystem sys = load_system(system_path);
      if (s_check->parsed()) {
        result = spectral_check(cfg, sys);
      } else if (s_min->parsed()) {
        result = spectral_minsets(cfg, sys);
      } else if (s_walk->parsed()) {
        result = spectral_walk(sys, which);
      } else if (s_frame->parsed()) {
        result = spectral_frame(cfg, sys);
      } else {
        result = spectral_parseval(cfg, sys, points, terms);
      }
    }
    emit(cfg, result.text, out);
    return result.code;
  } catch (const MismatchError& e) {
    err << "cross-check mismatch: " << e.what() << '\n';
    try {
      emit(cfg, e.report.dump(2) + "\n", out);
    } catch (const std::exception& inner) {
      err << "error: " << inner.what() << '\n';
    }
    return kCrossCheckMismatch;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidWalk& e) {
    err << "invalid walk: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kVerificationFailure;
  }
}

}  // namespace cuntz::cli
