#include "nbspec/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbspec/error.hpp"
#include "nbspec/operators.hpp"
#include "nbspec/report.hpp"
#include "nbspec/suites.hpp"
#include "nbspec/sweep.hpp"

namespace nbspec {

namespace {

using nlohmann::json;

class GeneratorParser {
 public:
  explicit GeneratorParser(std::string_view text) : text_(text) {}

  Graph parse() {
    Graph g = spec();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("generator '" + std::string(text_) + "', column " + std::to_string(pos_ + 1) + ": " + what, 0);
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string name() {
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a generator name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t number() {
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer");
    if (pos_ - start > 18) fail("integer too large");
    return std::stoull(std::string(text_.substr(start, pos_ - start)));
  }

  std::vector<std::uint64_t> numbers(std::size_t count) {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) expect(',');
      out.push_back(number());
    }
    return out;
  }

  Graph spec() {
    const std::string kind = name();
    if (kind == "petersen") return petersen_graph();
    expect(':');
    if (kind == "join") {
      const Graph g1 = spec();
      expect('@');
      const auto v = number();
      expect('+');
      const Graph g2 = spec();
      expect('@');
      const auto w = number();
      return join_at_vertex(g1, v, g2, w);
    }
    if (kind == "cycle") return cycle_graph(numbers(1)[0]);
    if (kind == "path") return path_graph(numbers(1)[0]);
    if (kind == "complete") return complete_graph(numbers(1)[0]);
    if (kind == "star") return star_graph(numbers(1)[0]);
    if (kind == "empty") return empty_graph(numbers(1)[0]);
    if (kind == "bipartite") {
      const auto a = numbers(2);
      return complete_bipartite_graph(a[0], a[1]);
    }
    if (kind == "pinwheel") {
      const auto a = numbers(2);
      return pinwheel_graph(a[0], a[1]);
    }
    if (kind == "tree") {
      const auto a = numbers(2);
      return random_tree(a[0], a[1]);
    }
    fail("unknown generator '" + kind + "'");
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Source {
  std::string gen;
  std::string file;

  void add_to(CLI::App& cmd) {
    auto* g = cmd.add_option("--gen", gen, "generator spec, e.g. cycle:5 or join:complete:4@0+path:3@0");
    auto* f = cmd.add_option("--file", file, "edge-list file");
    g->excludes(f);
    f->excludes(g);
  }

  Graph load() const {
    if (!gen.empty()) return parse_generator(gen);
    if (!file.empty()) return from_edge_list(read_file(file));
    throw Error("one of --gen or --file is required");
  }
};

json graph_summary(const Graph& g) { return {{"n", g.vertex_count()}, {"m", g.edge_count()}}; }

json complex_pair(Complex z) {
  auto snap = [](double x) { return std::abs(x) < 1e-12 ? 0.0 : stable_number(x); };
  return json::array({snap(z.real()), snap(z.imag())});
}

const Matrix& pick(const NBOperators& ops, const std::string& target) {
  static const std::map<std::string, Matrix NBOperators::*> table{
      {"B", &NBOperators::B}, {"C", &NBOperators::C}, {"K", &NBOperators::K}, {"A", &NBOperators::A},
      {"D", &NBOperators::D}, {"S", &NBOperators::S}, {"T", &NBOperators::T}, {"tau", &NBOperators::tau}};
  return ops.*table.at(target);
}

json summary_counts(const std::vector<VerificationReport>& rs) {
  std::map<std::string, std::size_t> counts{{"pass", 0}, {"fail", 0}, {"not-applicable", 0}};
  for (const auto& r : rs) ++counts[std::string(to_string(r.status))];
  return counts;
}

int cmd_spectrum(const Graph& g, const std::string& target, double tol, std::ostream& out) {
  const NBOperators ops = build_operators(g);
  const Matrix& m = pick(ops, target);
  const Spectrum s = eigenvalues(m, tol);
  json values = json::array();
  for (const auto& z : s.values()) values.push_back(complex_pair(z));
  json clusters = json::array();
  for (const auto& c : s.clusters()) clusters.push_back({{"value", complex_pair(c.value)}, {"multiplicity", c.multiplicity}});
  json j;
  j["graph"] = graph_summary(g);
  j["target"] = target;
  j["dimension"] = m.rows();
  j["eigenvalues"] = values;
  j["clusters"] = clusters;
  j["spectral_radius"] = stable_number(s.spectral_radius());
  j["min_modulus"] = stable_number(s.min_modulus());
  j["cluster_tolerance"] = tol;
  out << j.dump(2) << '\n';
  return exit_code::kOk;
}

int cmd_verify(const Graph& g, Suite suite, double tol, std::ostream& out) {
  const auto reports = run_suite(g, suite, tol);
  json j;
  j["graph"] = graph_summary(g);
  j["suite"] = std::string(to_string(suite));
  j["tolerance"] = tol;
  j["reports"] = to_json(reports);
  j["summary"] = summary_counts(reports);
  out << j.dump(2) << '\n';
  return any_failed(reports) ? exit_code::kVerificationFailed : exit_code::kOk;
}

int cmd_sweep(std::size_t n_max, Suite suite, bool labeled, bool connected, double tol, std::ostream& out) {
  if (n_max > kMaxSweepVertices) throw BudgetError("sweep limited to n <= 7");
  std::map<std::string, std::map<std::string, std::size_t>> per_check;
  std::size_t graphs = 0;
  std::size_t failing_graphs = 0;
  json first = nullptr;
  for (std::size_t n = 1; n <= n_max; ++n) {
    SweepOptions options{n, connected, !labeled};
    for_each_graph(options, [&](const Graph& g) {
      ++graphs;
      const auto reports = run_suite(g, suite, tol);
      for (const auto& r : reports) ++per_check[r.check][std::string(to_string(r.status))];
      if (any_failed(reports)) {
        ++failing_graphs;
        if (first.is_null()) {
          std::vector<VerificationReport> failed;
          std::copy_if(reports.begin(), reports.end(), std::back_inserter(failed),
                       [](const VerificationReport& r) { return r.failed(); });
          first = {{"edge_list", to_edge_list(g)}, {"reports", to_json(failed)}};
        }
      }
      return true;
    });
  }
  json checks = json::object();
  for (const auto& [name, counts] : per_check) {
    json c = {{"pass", 0}, {"fail", 0}, {"not-applicable", 0}};
    for (const auto& [status, count] : counts) c[status] = count;
    checks[name] = c;
  }
  json j;
  j["n_max"] = n_max;
  j["suite"] = std::string(to_string(suite));
  j["mode"] = labeled ? "labeled" : "isomorphism-classes";
  j["connected_only"] = connected;
  j["tolerance"] = tol;
  j["graphs"] = graphs;
  j["failing_graphs"] = failing_graphs;
  j["checks"] = checks;
  j["first_counterexample"] = first;
  out << j.dump(2) << '\n';
  return failing_graphs > 0 ? exit_code::kVerificationFailed : exit_code::kOk;
}

const std::vector<std::string> kSuiteChoices{"all", "ihara", "decomposition", "bounds", "detect", "oracle"};

}  // namespace

Graph parse_generator(std::string_view spec) { return GeneratorParser(spec).parse(); }

double tolerance_from_env(double fallback) {
  const char* raw = std::getenv("NBSPEC_TOL");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw ParseError("NBSPEC_TOL must be a positive number, got '" + std::string(raw) + "'", 0);
  }
  return v;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-backtracking matrix spectra and theorem checks", "nbspec"};
  app.require_subcommand(1);

  Source spectrum_src;
  std::string spectrum_target = "B";
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of one operator as JSON");
  spectrum_src.add_to(*spectrum);
  spectrum->add_option("--target", spectrum_target, "B, K, A or C")
      ->check(CLI::IsMember({"B", "K", "A", "C"}));

  Source verify_src;
  std::string verify_suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite on one graph");
  verify_src.add_to(*verify);
  verify->add_option("--suite", verify_suite)->check(CLI::IsMember(kSuiteChoices));

  std::size_t sweep_n = 0;
  std::string sweep_suite = "all";
  bool sweep_labeled = false;
  bool sweep_connected = false;
  auto* sweep = app.add_subcommand("sweep", "run a suite over every graph with 1..n vertices");
  sweep->add_option("--n", sweep_n, "largest vertex count (<= 7)")->required();
  sweep->add_option("--suite", sweep_suite)->check(CLI::IsMember(kSuiteChoices));
  sweep->add_flag("--labeled", sweep_labeled, "every labeled graph instead of one per isomorphism class");
  sweep->add_flag("--connected", sweep_connected, "connected graphs only");

  Source matrix_src;
  std::string matrix_target = "B";
  auto* matrix = app.add_subcommand("matrix", "write one operator as MatrixMarket");
  matrix_src.add_to(*matrix);
  matrix->add_option("--target", matrix_target, "B, C, K, A, D, S, T or tau")
      ->check(CLI::IsMember({"B", "C", "K", "A", "D", "S", "T", "tau"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::kInputError;
  }

  try {
    const double tol = tolerance_from_env(tolerance::kMatch);
    if (spectrum->parsed()) return cmd_spectrum(spectrum_src.load(), spectrum_target, tol, out);
    if (verify->parsed()) return cmd_verify(verify_src.load(), *parse_suite(verify_suite), tol, out);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_n, *parse_suite(sweep_suite), sweep_labeled, sweep_connected, tol, out);
    }
    if (matrix->parsed()) {
      write_matrix_market(out, pick(build_operators(matrix_src.load()), matrix_target));
      return exit_code::kOk;
    }
  } catch (const Error& e) {
    err << "nbspec: " << e.what() << '\n';
    return exit_code::kInputError;
  }
  return exit_code::kInputError;
}

}  // namespace nbspec
