// privsub: command-line front end for the Pauli-group, algebra and privacy
// pipelines.
//
// Exit status: 0 pass, 1 verified-false verdict, 2 input error,
// 3 precondition violation or unresolvable numerics.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privsub/constructions.hpp"
#include "privsub/errors.hpp"
#include "privsub/serialize.hpp"

namespace {

using namespace privsub;

constexpr int kExitPass = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;

struct Options {
  int d = 2;
  int n = 0;  // 0: infer
  std::optional<std::string> gens;
  std::vector<std::string> in;
  std::string out;
  std::optional<double> tol;
  std::uint64_t seed = kDefaultStructureSeed;
  std::string format = "json";
  bool no_timestamp = false;
  bool perturb = false;
  std::string algebra;
  std::string a;
  std::string b;
  std::optional<std::string> group;
  bool construct = false;
  std::string channel;
};

// Result of one command: JSON payload, text view, exit status.
struct Output {
  Json payload = Json::object();
  std::string text;
  // The text view is a data file (subgroup list, CSV, matrix) rather than a
  // transcript; the seed/tolerance echo then goes to stderr.
  bool artifact = false;
  int status = kExitPass;
};

std::string timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  // ---- inputs ----

  int sites_or(int fallback) const { return o_.n > 0 ? o_.n : fallback; }

  PauliSubgroup subgroup_from_text(const std::string& text) const {
    const auto elems = parse_pauli_list(text, o_.d, o_.n > 0 ? std::optional<int>(o_.n) : std::nullopt);
    const int n = elems.empty() ? sites_or(1) : elems.front().sites();
    std::vector<PauliClass> classes;
    for (const auto& e : elems) classes.emplace_back(e);
    return close(o_.d, n, classes);
  }

  // --gens, --group, or the first --in file (subgroup format).
  PauliSubgroup subgroup() const {
    if (o_.group) return subgroup_from_text(*o_.group);
    if (o_.gens) return subgroup_from_text(*o_.gens);
    if (!o_.in.empty()) {
      std::istringstream is(read_text_file(o_.in.front()));
      return read_subgroup(is);
    }
    throw InputError("no subgroup given (use --gens, --group or --in)");
  }

  Eigen::Index space_size() const {
    Eigen::Index size = 1;
    for (int i = 0; i < sites_or(1); ++i) size *= o_.d;
    return size;
  }

  // Named algebra, JSON file, or comma-separated Pauli list.
  OperatorAlgebra algebra(const std::string& name) const {
    if (name.empty()) throw InputError("no algebra given");
    if (name.rfind("delta", 0) == 0 && name.size() > 5) {
      const std::string digits = name.substr(5);
      if (digits.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("bad diagonal algebra name '" + name + "'");
      const int size = std::stoi(digits);
      if (size < 1) throw InputError("delta<N> needs N >= 1");
      return OperatorAlgebra::diagonal(size);
    }
    if (name == "scalars") return OperatorAlgebra::scalars(space_size());
    if (name == "full") return OperatorAlgebra::full(space_size());
    if (name == "diagonal") return OperatorAlgebra::diagonal(space_size());
    if (name == "xyhat") return xy_hat_generators(sites_or(2)).algebra;
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
      return algebra_from_json(read_json_file(name));
    const auto elems = parse_pauli_list(name, o_.d);
    if (elems.empty()) throw InputError("empty Pauli list for algebra");
    std::vector<DenseOperator> ops;
    for (const auto& e : elems) ops.push_back(to_dense(e));
    return span_closure(ops, ops.front().rows());
  }

  // --channel (identity | depolarizing | JSON file), --group, --gens, or
  // --algebra (conditional expectation).
  Channel channel() const {
    if (!o_.channel.empty()) {
      if (o_.channel == "identity") return Channel::identity(space_size());
      if (o_.channel == "depolarizing") {
        std::vector<DenseOperator> unitaries;
        for (const auto& c : all_classes(o_.d, sites_or(1))) unitaries.push_back(to_dense(c));
        return random_unitary_channel(unitaries);
      }
      return channel_from_json(read_json_file(o_.channel));
    }
    if (o_.group || o_.gens) return channel_from_subgroup(subgroup());
    if (!o_.algebra.empty()) return conditional_expectation(algebra(o_.algebra), o_.seed);
    throw InputError("no channel given (use --channel, --group, --gens or --algebra)");
  }

  std::string channel_description() const {
    if (!o_.channel.empty()) return o_.channel;
    if (o_.group) return "subgroup channel of {" + *o_.group + "}";
    if (o_.gens) return "subgroup channel of {" + *o_.gens + "}";
    return "conditional expectation onto " + o_.algebra;
  }

  Json input_hashes() const {
    Json inputs = Json::object();
    if (o_.gens) inputs["gens"] = *o_.gens;
    if (o_.group) inputs["group"] = *o_.group;
    if (!o_.algebra.empty()) inputs["algebra"] = o_.algebra;
    if (!o_.channel.empty()) inputs["channel"] = o_.channel;
    Json files = Json::array();
    for (const auto& path : o_.in)
      files.push_back(Json{{"path", path}, {"fnv1a", content_hash(read_text_file(path))}});
    for (const auto& path : {o_.channel, o_.algebra})
      if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        files.push_back(Json{{"path", path}, {"fnv1a", content_hash(read_text_file(path))}});
    if (!files.empty()) inputs["files"] = files;
    return inputs;
  }

  double tol(double fallback) const { return o_.tol.value_or(fallback); }

  // ---- group ----

  Output group_listing(const PauliSubgroup& g) const {
    Output out;
    Json elements = Json::array();
    for (const auto& c : g.elements()) elements.push_back(format_pauli(c));
    Json gens = Json::array();
    for (const auto& c : g.generators()) gens.push_back(format_pauli(c));
    out.payload = Json{{"d", g.dim()}, {"n", g.sites()}, {"size", g.size()},
                       {"abelian", is_abelian(g)}, {"generators", gens}, {"elements", elements}};
    std::ostringstream os;
    write_subgroup(os, g);
    out.text = os.str();
    out.artifact = true;
    return out;
  }

  Output group_close() const { return group_listing(subgroup()); }

  Output group_abelian() const {
    const auto g = subgroup();
    Output out;
    const bool abelian = is_abelian(g);
    out.payload = Json{{"d", g.dim()}, {"n", g.sites()}, {"size", g.size()}, {"verdict", abelian}};
    out.text = std::string("abelian: ") + (abelian ? "true" : "false") + "\n";
    out.status = abelian ? kExitPass : kExitFalse;
    return out;
  }

  Output group_annihilator() const { return group_listing(annihilator(subgroup())); }

  Output group_extend() const { return group_listing(extend_to_maximal(subgroup())); }

  Output group_charmatrix() const {
    const auto m = character_matrix(o_.d, sites_or(1));
    Output out;
    Json classes = Json::array();
    for (const auto& c : m.classes()) classes.push_back(format_pauli(c));
    Json table = Json::array();
    for (std::size_t r = 0; r < m.size(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m.omega_exponent(r, c));
      table.push_back(row);
    }
    out.payload = Json{{"d", m.dim()}, {"n", m.sites()}, {"classes", classes},
                       {"omega_exponents", table}};
    std::ostringstream os;
    write_character_csv(os, m);
    out.text = os.str();
    out.artifact = true;
    return out;
  }

  // ---- channel ----

  Output channel_listing(const Channel& phi, Json extra = Json::object()) const {
    Output out;
    out.payload = extra;
    out.payload["kraus_count"] = phi.kraus().size();
    out.payload["kraus_commute"] = kraus_mutually_commuting(phi);
    out.payload["kraus"] = channel_to_json(phi)["kraus"];
    std::ostringstream os;
    os << "channel on C^" << phi.size() << " with " << phi.kraus().size() << " Kraus operators"
       << (kraus_mutually_commuting(phi) ? " (mutually commuting)" : "") << "\n";
    out.text = os.str();
    return out;
  }

  Output channel_from_group() const {
    const auto g = subgroup();
    return channel_listing(channel_from_subgroup(g), Json{{"d", g.dim()}, {"n", g.sites()}});
  }

  Output channel_condexp() const {
    const auto a = algebra(o_.algebra);
    const auto s = structure_type(a, o_.seed);
    return channel_listing(conditional_expectation(s),
                           Json{{"algebra", o_.algebra},
                                {"algebra_dimension", a.dimension()},
                                {"structure", structure_to_json(s.type)},
                                {"structure_seed", s.seed}});
  }

  DenseOperator state_input() const {
    if (o_.in.empty()) throw InputError("no state given (use --in state.json)");
    return operator_from_json(read_json_file(o_.in.front()));
  }

  Output channel_apply() const {
    const Channel phi = channel();
    const DenseOperator rho = state_input();
    const DenseOperator out_state = apply_channel(phi, rho);
    Output out;
    out.payload = operator_to_json(out_state);
    out.payload["trace_in"] = rho.trace().real();
    out.payload["trace_out"] = out_state.trace().real();
    std::ostringstream os;
    os << out_state << "\n";
    out.text = os.str();
    out.artifact = true;
    return out;
  }

  Output channel_choi_equal() const {
    std::vector<Channel> channels;
    if (!o_.channel.empty() || o_.group || o_.gens || !o_.algebra.empty())
      channels.push_back(channel());
    for (const auto& path : o_.in) channels.push_back(channel_from_json(read_json_file(path)));
    if (channels.size() != 2) throw InputError("choi-equal needs exactly two channels");
    if (channels[0].size() != channels[1].size())
      throw PreconditionError("channels act on spaces of different size");
    const double t = tol(1e-8);
    const double dist = choi_distance(channels[0], channels[1]);
    Output out;
    out.payload = Json{{"choi_distance", dist}, {"verdict", dist <= t}};
    out.text = std::string("choi-equal: ") + (dist <= t ? "true" : "false") +
               " (max entry difference " + fmt_double(dist) + ")\n";
    out.status = dist <= t ? kExitPass : kExitFalse;
    return out;
  }

  // ---- privacy ----

  Output certificate_output(const PrivacyCertificate& cert, Json extra) const {
    Output out;
    out.payload = certificate_to_json(cert, input_hashes());
    for (auto& [key, value] : extra.items()) out.payload[key] = value;
    std::ostringstream os;
    os << "channel: " << cert.channel_description << "\n"
       << "target: " << cert.target_description << "\n"
       << "max deviation " << fmt_double(cert.max_deviation) << " (tolerance "
       << fmt_double(cert.tolerance) << ")\n"
       << "verdict: " << (cert.verdict ? "private" : "not private") << "\n";
    out.text = os.str();
    out.status = cert.verdict ? kExitPass : kExitFalse;
    return out;
  }

  Output privacy_certify() const {
    const double t = tol(kPrivacyTol);
    if (o_.construct) {
      const auto g = subgroup();
      const bool maximal = g.size() == (std::size_t{1} << g.sites()) && g.dim() == 2;
      PrivateAlgebra result = maximal ? private_algebra_for_max_abelian(g, o_.seed)
                                      : private_algebra_for_abelian(g, o_.seed);
      PrivacyCertificate cert = t == kPrivacyTol
                                    ? result.certificate
                                    : check_privatized_algebra(channel_from_subgroup(g),
                                                               result.algebra, t);
      cert.channel_description = channel_description();
      cert.target_description =
          std::string(maximal ? "maximal" : "non-maximal") + " Abelian construction";
      return certificate_output(cert, Json{{"construction", maximal ? "maximal" : "abelian"},
                                           {"structure", structure_to_json(result.structure)},
                                           {"encoded_qubits", result.encoded_qubits},
                                           {"algebra", algebra_to_json(result.algebra)}});
    }
    const Channel phi = channel();
    const auto b = algebra(o_.algebra);
    PrivacyCertificate cert = check_privatized_algebra(phi, b, t);
    cert.channel_description = channel_description();
    cert.target_description = o_.algebra;
    return certificate_output(cert, Json::object());
  }

  // Subsystem form: the target algebra's single I_k (x) M_q block supplies
  // the embedding; sigma_A is I/k unless --in gives a state.
  Output privacy_subsystem() const {
    const double t = tol(kPrivacyTol);
    const Channel phi = channel();
    const auto b = algebra(o_.algebra);
    const auto s = structure_type(b, o_.seed);
    if (s.type.size() != 1) throw PreconditionError("subsystem form needs a single-block algebra");
    const int k = s.type.front().multiplicity;
    const int q = s.type.front().block_size;
    const DenseOperator sigma =
        o_.in.empty() ? DenseOperator(DenseOperator::Identity(k, k) / double(k)) : state_input();
    PrivacyCertificate cert = check_private_subsystem(phi, s.unitary.adjoint(), k, q, sigma, t);
    cert.channel_description = channel_description();
    cert.target_description = "subsystem M_" + std::to_string(q) + " of " + o_.algebra;
    return certificate_output(cert, Json{{"dim_a", k}, {"dim_b", q},
                                         {"sigma_a", operator_to_json(sigma)}});
  }

  Output privacy_quasiorth() const {
    const double t = tol(kQuasiorthTol);
    const bool verdict = is_quasiorthogonal(algebra(o_.a), algebra(o_.b), t);
    Output out;
    out.payload = Json{{"a", o_.a}, {"b", o_.b}, {"verdict", verdict}};
    out.text = std::string("quasiorthogonal: ") + (verdict ? "true" : "false") + "\n";
    out.status = verdict ? kExitPass : kExitFalse;
    return out;
  }

  Output privacy_suite() const {
    const double t = tol(kQuasiorthTol);
    const auto report = quasiorth_condition_suite(algebra(o_.a), algebra(o_.b), t);
    Output out;
    out.payload = quasiorth_report_to_json(report);
    out.payload["a"] = o_.a;
    out.payload["b"] = o_.b;
    std::ostringstream os;
    for (int c = 0; c < 4; ++c)
      os << "condition (" << c + 1 << "): " << (report.passed[c] ? "pass" : "fail")
         << ", max deviation " << fmt_double(report.deviation[c]) << "\n";
    os << "conditions agree: " << (report.consistent ? "yes" : "no") << "\n";
    out.text = os.str();
    if (!report.consistent) throw NumericalAmbiguity("quasiorthogonality conditions disagree");
    out.status = report.verdict() ? kExitPass : kExitFalse;
    return out;
  }

  // ---- demos ----

  Output demo_phaseflip() const {
    const double t = tol(kPrivacyTol);
    const auto g = close(2, 2, std::vector{PauliClass(parse_pauli("ZI", 2)),
                                           PauliClass(parse_pauli("IZ", 2))});
    const Channel phi = channel_from_subgroup(g);
    const std::vector<std::string> names{"II", "IX", "YY", "YZ"};
    std::vector<DenseOperator> basis;
    for (const auto& s : names) basis.push_back(to_dense(parse_pauli(s, 2)));
    const auto b = span_closure(basis, 4);
    const auto cert = check_privatized_algebra(phi, b, t);
    const auto type = structure_type(b, o_.seed).type;

    // Random states (II + c2 IX + c3 YY + c4 YZ)/4 with |c| <= 1.
    std::mt19937_64 rng(o_.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const DenseOperator target = 0.25 * DenseOperator::Identity(4, 4);
    double worst = 0.0;
    const int trials = 100;
    for (int i = 0; i < trials; ++i) {
      double c[3];
      do {
        for (double& v : c) v = u(rng);
      } while (c[0] * c[0] + c[1] * c[1] + c[2] * c[2] > 1.0);
      const DenseOperator rho =
          0.25 * (basis[0] + c[0] * basis[1] + c[1] * basis[2] + c[2] * basis[3]);
      worst = std::max(worst, max_abs(apply_channel(phi, rho) - target));
    }
    const bool pass = cert.verdict && worst <= t;

    std::vector<std::string> lines{
        "channel: Kraus operators {II, ZI, IZ, ZZ}/2",
        std::string("Kraus operators mutually commute: ") +
            (kraus_mutually_commuting(phi) ? "yes" : "no"),
        "algebra: Alg{II, IX, YY, YZ}, dimension " + std::to_string(b.dimension()) +
            ", structure " + format_structure(type),
        "basis certificate: max deviation " + fmt_double(cert.max_deviation) + " over " +
            std::to_string(cert.deviations.size()) + " basis elements",
        "tested " + std::to_string(trials) + " random states rho = (II + c2 IX + c3 YY + c4 YZ)/4",
        pass ? "Φ(ρ) = I/4 for all tested ρ; max deviation < 1e−8"
             : "Φ(ρ) ≠ I/4 for some tested ρ; max deviation " + fmt_double(worst)};
    if (pass && t != kPrivacyTol)
      lines.back() = "Φ(ρ) = I/4 for all tested ρ; max deviation < " + fmt_double(t);

    Output out;
    out.payload = Json{{"certificate", certificate_to_json(cert, Json::object())},
                       {"structure", structure_to_json(type)},
                       {"random_states", trials},
                       {"random_state_max_deviation", worst},
                       {"verdict", pass},
                       {"transcript", lines}};
    for (const auto& l : lines) out.text += l + "\n";
    out.status = pass ? kExitPass : kExitFalse;
    return out;
  }

  Output demo_qutrit() const {
    const auto report = qutrit_demo(o_.perturb);
    Output out;
    out.payload = demo_report_to_json(report);
    out.payload["perturbed"] = o_.perturb;
    std::ostringstream os;
    for (const auto& c : report.checks) {
      os << (c.passed ? "pass " : "FAIL ") << c.name;
      if (c.deviation > 0.0) os << " (deviation " << fmt_double(c.deviation) << ")";
      if (!c.detail.empty()) os << " [" << c.detail << "]";
      os << "\n";
    }
    os << "unitary satisfying both identities found by direct solve: "
       << (report.intertwiner_found ? "yes" : "no");
    if (report.intertwiner_found) os << " (defect " << fmt_double(report.intertwiner_defect) << ")";
    os << "\n";
    if (auto f = report.first_failure()) os << "first failing identity: " << *f << "\n";
    out.text = os.str();
    out.status = report.passed() ? kExitPass : kExitFalse;
    return out;
  }

  // ---- envelope ----

  int emit(const std::string& command, Output out, double tolerance) const {
    std::string body;
    if (o_.format == "text") {
      std::ostringstream echo;
      echo << "# " << command << ": seed " << o_.seed << ", tolerance " << fmt_double(tolerance)
           << "\n";
      if (out.artifact) {
        std::cerr << echo.str();
        body = out.text;
      } else {
        body = echo.str() + out.text;
      }
    } else {
      Json doc = Json::object();
      doc["command"] = command;
      doc["seed"] = o_.seed;
      doc["tolerance"] = tolerance;
      if (!o_.no_timestamp) doc["timestamp"] = timestamp_now();
      for (auto& [key, value] : out.payload.items()) doc[key] = value;
      doc["exit_status"] = out.status;
      body = doc.dump(2) + "\n";
    }
    if (o_.out.empty()) {
      std::cout << body;
    } else {
      std::ofstream f(o_.out);
      if (!f) throw InputError("cannot write '" + o_.out + "'");
      f << body;
    }
    return out.status;
  }

 private:
  const Options& o_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pauli subgroups, operator algebras and private quantum channels"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  Options o;
  app.add_option("--d", o.d, "Local dimension (2 = qubits)")->check(CLI::Range(2, 64));
  app.add_option("--n", o.n, "Number of sites")->check(CLI::Range(1, 16));
  app.add_option("--gens", o.gens, "Comma-separated Pauli generators");
  app.add_option("--in", o.in, "Input file (repeatable)");
  app.add_option("--out", o.out, "Output file (default: stdout)");
  app.add_option("--tol", o.tol, "Tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for random elements in decompositions and demos");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field");
  app.add_flag("--perturb", o.perturb, "Negative control for demo qutrit");
  app.add_option("--algebra", o.algebra,
                 "Algebra: delta<N>, scalars, full, diagonal, xyhat, a JSON file, or Pauli list");
  app.add_option("--a", o.a, "First algebra (as --algebra)");
  app.add_option("--b", o.b, "Second algebra (as --algebra)");
  app.add_option("--group", o.group, "Comma-separated generators of the channel's subgroup");
  app.add_flag("--construct", o.construct, "Certify the constructed private algebra");
  app.add_option("--channel", o.channel, "Channel: identity, depolarizing, or a JSON file");

  Runner runner(o);
  std::function<int()> selected;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<Output()> body, std::function<double()> tolerance) {
    auto* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    const std::string command = parent->get_name() + " " + name;
    sub->callback([&, command, body, tolerance] {
      selected = [&, command, body, tolerance] {
        return runner.emit(command, body(), tolerance());
      };
    });
  };
  auto privacy_tol = [&] { return runner.tol(kPrivacyTol); };
  auto quasi_tol = [&] { return runner.tol(kQuasiorthTol); };
  auto no_tol = [&] { return runner.tol(0.0); };
  auto choi_tol = [&] { return runner.tol(1e-8); };

  auto* group = app.add_subcommand("group", "Subgroups of the Pauli group modulo phases");
  group->fallthrough()->require_subcommand(1);
  leaf(group, "close", "Close generators into a subgroup", [&] { return runner.group_close(); }, no_tol);
  leaf(group, "abelian", "Test commutativity (exit 1 if not Abelian)",
       [&] { return runner.group_abelian(); }, no_tol);
  leaf(group, "annihilator", "Classes commuting with every element",
       [&] { return runner.group_annihilator(); }, no_tol);
  leaf(group, "extend", "Extend an Abelian subgroup to a maximal one",
       [&] { return runner.group_extend(); }, no_tol);
  leaf(group, "charmatrix", "Character matrix of P_n (CSV with --format text)",
       [&] { return runner.group_charmatrix(); }, no_tol);

  auto* channel = app.add_subcommand("channel", "Channels in Kraus form");
  channel->fallthrough()->require_subcommand(1);
  leaf(channel, "from-group", "Equally weighted channel of an Abelian subgroup",
       [&] { return runner.channel_from_group(); }, no_tol);
  leaf(channel, "condexp", "Trace-preserving conditional expectation onto --algebra",
       [&] { return runner.channel_condexp(); }, no_tol);
  leaf(channel, "apply", "Apply a channel to the state in --in",
       [&] { return runner.channel_apply(); }, no_tol);
  leaf(channel, "choi-equal", "Compare two channels by their Choi matrices",
       [&] { return runner.channel_choi_equal(); }, choi_tol);

  auto* privacy = app.add_subcommand("privacy", "Quasiorthogonality and privacy certificates");
  privacy->fallthrough()->require_subcommand(1);
  leaf(privacy, "certify", "Certify that a channel privatizes an algebra",
       [&] { return runner.privacy_certify(); }, privacy_tol);
  leaf(privacy, "subsystem", "Certify the subsystem form of a single-block algebra",
       [&] { return runner.privacy_subsystem(); }, privacy_tol);
  leaf(privacy, "quasiorth", "Trace-factorization test for --a and --b",
       [&] { return runner.privacy_quasiorth(); }, quasi_tol);
  leaf(privacy, "suite", "All four quasiorthogonality conditions for --a and --b",
       [&] { return runner.privacy_suite(); }, quasi_tol);

  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->fallthrough()->require_subcommand(1);
  leaf(demo, "phaseflip", "Two-qubit phase-flip channel privatizing one qubit",
       [&] { return runner.demo_phaseflip(); }, privacy_tol);
  leaf(demo, "qutrit", "Two-qutrit example (--perturb for the negative control)",
       [&] { return runner.demo_qutrit(); }, [] { return 1e-9; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    return selected();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const NumericalAmbiguity& e) {
    std::cerr << "numerical ambiguity: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
