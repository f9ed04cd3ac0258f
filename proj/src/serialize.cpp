#include "privsub/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "privsub/errors.hpp"

namespace privsub {

Json operator_to_json(const DenseOperator& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ii = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DenseOperator operator_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<Eigen::Index>();
    const Json& re = j.at("re");
    const Json& im = j.at("im");
    if (n < 1 || re.size() != static_cast<std::size_t>(n) ||
        im.size() != static_cast<std::size_t>(n))
      throw InputError("operator JSON: row count does not match n");
    DenseOperator m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (re[r].size() != static_cast<std::size_t>(n) || im[r].size() != static_cast<std::size_t>(n))
        throw InputError("operator JSON: column count does not match n");
      for (Eigen::Index c = 0; c < n; ++c)
        m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    }
    if (!m.allFinite()) throw InputError("operator JSON: non-finite entry");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("operator JSON: ") + e.what());
  }
}

Json channel_to_json(const Channel& phi) {
  Json ks = Json::array();
  for (const auto& k : phi.kraus()) ks.push_back(operator_to_json(k));
  return Json{{"kraus", std::move(ks)}};
}

Channel channel_from_json(const Json& j) {
  if (!j.contains("kraus") || !j.at("kraus").is_array())
    throw InputError("channel JSON needs a \"kraus\" array");
  std::vector<DenseOperator> ks;
  for (const auto& k : j.at("kraus")) ks.push_back(operator_from_json(k));
  return Channel(std::move(ks));
}

Json algebra_to_json(const OperatorAlgebra& a) {
  Json basis = Json::array();
  for (const auto& b : a.basis()) basis.push_back(operator_to_json(b));
  return Json{{"basis", std::move(basis)}};
}

OperatorAlgebra algebra_from_json(const Json& j) {
  if (!j.contains("basis") || !j.at("basis").is_array() || j.at("basis").empty())
    throw InputError("algebra JSON needs a non-empty \"basis\" array");
  std::vector<DenseOperator> basis;
  for (const auto& b : j.at("basis")) basis.push_back(operator_from_json(b));
  return span_closure(basis, basis.front().rows());
}

std::pair<int, int> parse_header(std::string_view line) {
  int d = 0, n = 0;
  char tail = 0;
  if (std::sscanf(std::string(line).c_str(), "d=%d n=%d %c", &d, &n, &tail) != 2 || d < 2 || n < 1)
    throw InputError("expected header 'd=<d> n=<n>', got '" + std::string(line) + "'");
  return {d, n};
}

void write_subgroup(std::ostream& os, const PauliSubgroup& g) {
  os << "d=" << g.dim() << " n=" << g.sites() << '\n';
  for (const auto& c : g.elements()) os << format_pauli(c) << '\n';
}

PauliSubgroup read_subgroup(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("subgroup file is empty");
  const auto [d, n] = parse_header(line);
  std::vector<PauliClass> classes;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    classes.emplace_back(parse_pauli(line, d, n));
  }
  return close(d, n, classes);
}

void write_character_csv(std::ostream& os, const CharacterMatrix& m) {
  os << "class";
  for (const auto& c : m.classes()) os << ',' << format_pauli(c);
  os << '\n';
  for (std::size_t r = 0; r < m.size(); ++r) {
    os << format_pauli(m.classes()[r]);
    for (std::size_t c = 0; c < m.size(); ++c) os << ',' << m.omega_exponent(r, c);
    os << '\n';
  }
}

Json structure_to_json(const StructureType& type) {
  Json out = Json::array();
  for (const auto& b : type) out.push_back(Json::array({b.multiplicity, b.block_size}));
  return out;
}

Json certificate_to_json(const PrivacyCertificate& cert, const Json& inputs) {
  return Json{{"inputs", inputs},
              {"channel", cert.channel_description},
              {"target", cert.target_description},
              {"rho0", operator_to_json(cert.rho0)},
              {"max_deviation", cert.max_deviation},
              {"tolerance", cert.tolerance},
              {"verdict", cert.verdict},
              {"deviations", cert.deviations}};
}

Json quasiorth_report_to_json(const QuasiorthReport& report) {
  Json conditions = Json::array();
  for (std::size_t i = 0; i < 4; ++i)
    conditions.push_back(Json{{"condition", i + 1},
                              {"max_deviation", report.deviation[i]},
                              {"passed", report.passed[i]}});
  return Json{{"conditions", std::move(conditions)},
              {"tolerance", report.tolerance},
              {"consistent", report.consistent},
              {"verdict", report.verdict()}};
}

Json demo_report_to_json(const QutritDemoReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back(Json{{"name", c.name},
                          {"passed", c.passed},
                          {"deviation", c.deviation},
                          {"detail", c.detail}});
  Json out{{"checks", std::move(checks)},
           {"block_matrix_normalization", report.normalization},
           {"structure", structure_to_json(report.structure)},
           {"rho0", operator_to_json(report.rho0)},
           {"intertwiner_found", report.intertwiner_found},
           {"intertwiner_defect", report.intertwiner_defect},
           {"verdict", report.passed()}};
  if (auto f = report.first_failure()) out["first_failure"] = *f;
  return out;
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace privsub
