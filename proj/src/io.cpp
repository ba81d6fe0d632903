#include "qctrl/io.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

#ifndef QCTRL_VERSION
#define QCTRL_VERSION "0.0.0"
#endif

namespace qctrl {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number, got " + std::string(j.type_name()));
  return j.get<double>();
}

Eigen::MatrixXd read_real_block(const json& j, Eigen::Index dim, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  if (static_cast<Eigen::Index>(j.size()) != dim)
    fail(path, "expected " + std::to_string(dim) + " rows, got " + std::to_string(j.size()));
  Eigen::MatrixXd out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) fail(row_path, "expected an array");
    if (static_cast<Eigen::Index>(row.size()) != dim)
      fail(row_path, "expected " + std::to_string(dim) + " entries, got " + std::to_string(row.size()));
    for (Eigen::Index c = 0; c < dim; ++c)
      out(r, c) = read_number(row[static_cast<std::size_t>(c)], row_path + "[" + std::to_string(c) + "]");
  }
  return out;
}

Matrix read_matrix(const json& j, Eigen::Index dim, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with \"re\" and optional \"im\"");
  Matrix out = read_real_block(require(j, "re", path), dim, path + ".re").cast<Complex>();
  if (auto it = j.find("im"); it != j.end())
    out += Complex{0.0, 1.0} * read_real_block(*it, dim, path + ".im").cast<Complex>();
  return out;
}

json write_real_block(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json write_matrix(const Matrix& m) {
  return {{"re", write_real_block(m.real())}, {"im", write_real_block(m.imag())}};
}

json write_vector(const Vector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v(k).real(), v(k).imag()});
  return out;
}

Vector read_vector(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of [re, im] pairs");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 2) fail(p, "expected [re, im]");
    v(static_cast<Eigen::Index>(k)) = {read_number(j[k][0], p + "[0]"), read_number(j[k][1], p + "[1]")};
  }
  return v;
}

json write_pair(const IndexPair& p) { return json::array({p.first, p.second}); }

IndexPair read_pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail(path, "expected [i, j]");
  return {j[0].get<int>(), j[1].get<int>()};
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(line_column(text, at) + ": " + what);
  }
}

std::string symmetry_name(FormSymmetry s) {
  return s == FormSymmetry::Symmetric ? "symmetric" : "antisymmetric";
}

template <class T>
T get_as(const json& obj, const std::string& key, const std::string& path) {
  const json& j = require(obj, key, path);
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(path + "." + key, "unexpected type " + std::string(j.type_name()));
  }
}

}  // namespace

std::string_view tool_version() { return QCTRL_VERSION; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  std::ostringstream os;
  for (unsigned int k = 0; k < length; ++k)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
  return os.str();
}

HamiltonianSystem parse_system(std::string_view text, const Tolerances& defaults) {
  HamiltonianSystem sys = decode_system(text, defaults);
  sys.validate();
  return sys;
}

HamiltonianSystem decode_system(std::string_view text, const Tolerances& defaults) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail("<document>", "expected a JSON object");

  const json& dim_field = require(doc, "dim", "");
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1)
    fail("dim", "expected a positive integer");
  const auto dim = static_cast<Eigen::Index>(dim_field.get<long long>());

  HamiltonianSystem sys;
  sys.tol = defaults;
  sys.h0 = read_matrix(require(doc, "h0", ""), dim, "h0");

  const json& controls = require(doc, "controls", "");
  if (!controls.is_array() || controls.empty()) fail("controls", "expected a non-empty array");
  for (std::size_t k = 0; k < controls.size(); ++k)
    sys.controls.push_back(read_matrix(controls[k], dim, "controls[" + std::to_string(k) + "]"));

  if (auto it = doc.find("labels"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) fail("labels", "expected an array of strings");
    for (std::size_t k = 0; k < it->size(); ++k) {
      if (!(*it)[k].is_string()) fail("labels[" + std::to_string(k) + "]", "expected a string");
      sys.labels.push_back((*it)[k].get<std::string>());
    }
  }
  if (auto it = doc.find("tolerances"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) fail("tolerances", "expected an object");
    if (auto z = it->find("zero"); z != it->end()) sys.tol.zero = read_number(*z, "tolerances.zero");
    if (auto d = it->find("degeneracy"); d != it->end())
      sys.tol.degeneracy = read_number(*d, "tolerances.degeneracy");
  }
  return sys;
}

std::string serialize_system(const HamiltonianSystem& system) {
  json doc;
  doc["dim"] = system.dim();
  doc["h0"] = write_matrix(system.h0);
  doc["controls"] = json::array();
  for (const Matrix& h : system.controls) doc["controls"].push_back(write_matrix(h));
  if (!system.labels.empty()) doc["labels"] = system.labels;
  doc["tolerances"] = {{"zero", system.tol.zero}, {"degeneracy", system.tol.degeneracy}};
  return doc.dump(2) + "\n";
}

std::string serialize_report(const ReportDocument& doc) {
  const ControllabilityReport& r = doc.report;
  json out;
  out["tool"] = {{"name", "qctrl"}, {"version", doc.tool_version}};
  out["input_digest"] = doc.input_digest;
  out["dim"] = doc.dim;
  out["lie_dimension"] = r.lie_dimension;
  out["algebra_class"] = r.algebra.name();

  json algebra;
  algebra["dimension"] = r.algebra.dimension;
  algebra["has_identity_direction"] = r.algebra.has_identity_direction;
  algebra["traceless_class"] = r.algebra.traceless_name();
  algebra["traceless_dimension"] = r.algebra.traceless_dimension;
  algebra["heuristic"] = r.algebra.heuristic;
  algebra["identity_u1_assumed"] = r.algebra.identity_u1_assumed;
  if (r.algebra.invariant_form) {
    const InvariantForm& f = *r.algebra.invariant_form;
    algebra["invariant_form"] = write_matrix(f.form);
    algebra["invariant_form"]["symmetry"] = symmetry_name(f.symmetry);
    algebra["invariant_form"]["nondegenerate"] = f.nondegenerate;
  } else {
    algebra["invariant_form"] = nullptr;
  }
  out["algebra"] = std::move(algebra);

  out["verdicts"] = {{"complete", to_string(r.complete)},
                     {"density_matrix", to_string(r.density_matrix)},
                     {"pure_state", to_string(r.pure_state)}};

  json reg;
  reg["regular"] = r.regularity.regular;
  reg["strongly_regular"] = r.regularity.strongly_regular;
  reg["eigenvalues"] = r.regularity.eigenvalues;
  reg["degenerate_level_pairs"] = json::array();
  for (const auto& p : r.regularity.degenerate_level_pairs)
    reg["degenerate_level_pairs"].push_back(write_pair(p));
  reg["degenerate_gap_pairs"] = json::array();
  for (const auto& [a, b] : r.regularity.degenerate_gap_pairs)
    reg["degenerate_gap_pairs"].push_back({write_pair(a), write_pair(b)});
  out["regularity"] = std::move(reg);

  if (r.graph) {
    json g;
    g["outcome"] = to_string(r.graph->outcome);
    g["connected"] = r.graph->connected;
    g["basis_unique"] = r.graph->graph.basis_unique;
    g["vertex_count"] = r.graph->graph.vertex_count;
    g["edges"] = json::array();
    for (const auto& e : r.graph->graph.edges) g["edges"].push_back(write_pair(e));
    out["graph"] = std::move(g);
  } else {
    out["graph"] = nullptr;
  }

  if (r.chain && r.chain_spec) {
    json c;
    c["outcome"] = to_string(r.chain->outcome);
    c["condition"] = r.chain->condition;
    c["pivot"] = r.chain->pivot;
    c["note"] = r.chain->note;
    c["energies"] = r.chain_spec->energies;
    c["dipoles"] = r.chain_spec->dipoles;
    c["gaps"] = r.chain_spec->gaps();
    c["dipole_contrasts"] = r.chain_spec->dipole_contrasts();
    out["chain_criterion"] = std::move(c);
  } else {
    out["chain_criterion"] = nullptr;
  }

  out["dark_states"] = json::array();
  for (const Vector& v : r.dark_states) out["dark_states"].push_back(write_vector(v));
  out["commutant_dimension"] = r.commutant_dimension;
  out["evidence"] = json::array();
  for (const Evidence& e : r.evidence)
    out["evidence"].push_back(
        {{"criterion", e.criterion}, {"outcome", e.outcome}, {"citation", e.citation}});
  return out.dump(2) + "\n";
}

ReportDocument parse_report(std::string_view text) {
  const json in = parse_json(text);
  if (!in.is_object()) fail("<document>", "expected a JSON object");
  ReportDocument doc;
  ControllabilityReport& r = doc.report;

  doc.tool_version = get_as<std::string>(require(in, "tool", ""), "version", "tool");
  doc.input_digest = get_as<std::string>(in, "input_digest", "");
  doc.dim = get_as<Eigen::Index>(in, "dim", "");
  r.lie_dimension = get_as<std::size_t>(in, "lie_dimension", "");

  const auto tag = parse_tag_name(get_as<std::string>(in, "algebra_class", ""));
  if (!tag) fail("algebra_class", "unknown algebra class");
  const json& algebra = require(in, "algebra", "");
  r.algebra.tag = *tag;
  r.algebra.dim_hilbert = doc.dim;
  r.algebra.dimension = get_as<std::size_t>(algebra, "dimension", "algebra");
  r.algebra.has_identity_direction = get_as<bool>(algebra, "has_identity_direction", "algebra");
  const auto traceless = parse_tag_name(get_as<std::string>(algebra, "traceless_class", "algebra"));
  if (!traceless) fail("algebra.traceless_class", "unknown algebra class");
  r.algebra.traceless_tag = *traceless;
  r.algebra.traceless_dimension = get_as<std::size_t>(algebra, "traceless_dimension", "algebra");
  r.algebra.heuristic = get_as<bool>(algebra, "heuristic", "algebra");
  r.algebra.identity_u1_assumed = get_as<bool>(algebra, "identity_u1_assumed", "algebra");
  if (const json& f = require(algebra, "invariant_form", "algebra"); !f.is_null()) {
    InvariantForm form;
    form.form = read_matrix(f, doc.dim, "algebra.invariant_form");
    const auto sym = get_as<std::string>(f, "symmetry", "algebra.invariant_form");
    if (sym != "symmetric" && sym != "antisymmetric")
      fail("algebra.invariant_form.symmetry", "expected symmetric or antisymmetric");
    form.symmetry = sym == "symmetric" ? FormSymmetry::Symmetric : FormSymmetry::Antisymmetric;
    form.nondegenerate = get_as<bool>(f, "nondegenerate", "algebra.invariant_form");
    r.algebra.invariant_form = std::move(form);
  }

  const json& verdicts = require(in, "verdicts", "");
  auto verdict = [&](const char* key) {
    const auto v = parse_verdict(get_as<std::string>(verdicts, key, "verdicts"));
    if (!v) fail(std::string("verdicts.") + key, "expected yes, no or unknown");
    return *v;
  };
  r.complete = verdict("complete");
  r.density_matrix = verdict("density_matrix");
  r.pure_state = verdict("pure_state");

  const json& reg = require(in, "regularity", "");
  r.regularity.regular = get_as<bool>(reg, "regular", "regularity");
  r.regularity.strongly_regular = get_as<bool>(reg, "strongly_regular", "regularity");
  r.regularity.eigenvalues = get_as<std::vector<double>>(reg, "eigenvalues", "regularity");
  const json& levels = require(reg, "degenerate_level_pairs", "regularity");
  for (std::size_t k = 0; k < levels.size(); ++k)
    r.regularity.degenerate_level_pairs.push_back(
        read_pair(levels[k], "regularity.degenerate_level_pairs[" + std::to_string(k) + "]"));
  const json& gaps = require(reg, "degenerate_gap_pairs", "regularity");
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    const std::string p = "regularity.degenerate_gap_pairs[" + std::to_string(k) + "]";
    if (!gaps[k].is_array() || gaps[k].size() != 2) fail(p, "expected [[i, j], [m, n]]");
    r.regularity.degenerate_gap_pairs.emplace_back(read_pair(gaps[k][0], p + "[0]"),
                                                   read_pair(gaps[k][1], p + "[1]"));
  }

  if (const json& g = require(in, "graph", ""); !g.is_null()) {
    GraphCriterion gc;
    const auto outcome = parse_graph_outcome(get_as<std::string>(g, "outcome", "graph"));
    if (!outcome) fail("graph.outcome", "unknown outcome");
    gc.outcome = *outcome;
    gc.connected = get_as<bool>(g, "connected", "graph");
    gc.graph.basis_unique = get_as<bool>(g, "basis_unique", "graph");
    gc.graph.vertex_count = get_as<int>(g, "vertex_count", "graph");
    const json& edges = require(g, "edges", "graph");
    for (std::size_t k = 0; k < edges.size(); ++k)
      gc.graph.edges.push_back(read_pair(edges[k], "graph.edges[" + std::to_string(k) + "]"));
    r.graph = std::move(gc);
  }

  if (const json& c = require(in, "chain_criterion", ""); !c.is_null()) {
    ChainResult cr;
    const auto outcome = parse_chain_outcome(get_as<std::string>(c, "outcome", "chain_criterion"));
    if (!outcome) fail("chain_criterion.outcome", "unknown outcome");
    cr.outcome = *outcome;
    cr.condition = get_as<int>(c, "condition", "chain_criterion");
    cr.pivot = get_as<int>(c, "pivot", "chain_criterion");
    cr.note = get_as<std::string>(c, "note", "chain_criterion");
    ChainSpec spec;
    spec.energies = get_as<std::vector<double>>(c, "energies", "chain_criterion");
    spec.dipoles = get_as<std::vector<double>>(c, "dipoles", "chain_criterion");
    r.chain = std::move(cr);
    r.chain_spec = std::move(spec);
  }

  const json& dark = require(in, "dark_states", "");
  for (std::size_t k = 0; k < dark.size(); ++k)
    r.dark_states.push_back(read_vector(dark[k], "dark_states[" + std::to_string(k) + "]"));
  r.commutant_dimension = get_as<std::size_t>(in, "commutant_dimension", "");
  const json& evidence = require(in, "evidence", "");
  for (std::size_t k = 0; k < evidence.size(); ++k) {
    const std::string p = "evidence[" + std::to_string(k) + "]";
    r.evidence.push_back({get_as<std::string>(evidence[k], "criterion", p),
                          get_as<std::string>(evidence[k], "outcome", p),
                          get_as<std::string>(evidence[k], "citation", p)});
  }
  return doc;
}

std::string format_report_text(const ReportDocument& doc) {
  const ControllabilityReport& r = doc.report;
  std::ostringstream os;
  os << "qctrl " << doc.tool_version << "  input " << doc.input_digest << "\n";
  os << "Hilbert space dimension  " << doc.dim << "\n";
  os << "dynamical Lie algebra    " << r.algebra.name() << ", dimension " << r.lie_dimension;
  if (r.algebra.has_identity_direction)
    os << " (traceless part " << r.algebra.traceless_name() << ", dimension "
       << r.algebra.traceless_dimension << ")";
  os << "\n";
  os << "complete controllability " << to_string(r.complete) << "\n";
  os << "density-matrix           " << to_string(r.density_matrix) << "\n";
  os << "pure-state               " << to_string(r.pure_state) << "\n";
  os << "commutant dimension      " << r.commutant_dimension << "\n";
  os << "dark states              " << r.dark_states.size() << "\n";
  os.precision(6);
  for (const Vector& v : r.dark_states) {
    os << "  (";
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (k) os << ", ";
      if (std::abs(v(k).imag()) > 1e-12) os << v(k);
      else os << v(k).real();
    }
    os << ")\n";
  }
  os << "evidence:\n";
  for (const Evidence& e : r.evidence)
    os << "  - " << e.criterion << ": " << e.outcome << "\n      [" << e.citation << "]\n";
  return os.str();
}

}  // namespace qctrl
