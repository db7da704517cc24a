#include "deltaef/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deltaef/errors.hpp"

namespace deltaef {

namespace {

using json = nlohmann::ordered_json;

Int int_from(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_number_unsigned()) return Int(v.get<unsigned long long>());
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError(where + ": not a decimal integer string");
    }
  }
  throw ParseError(where + ": expected an integer");
}

json int_to_json(const Int& v) {
  static const Int lo = Int(std::numeric_limits<long long>::min());
  static const Int hi = Int(std::numeric_limits<long long>::max());
  if (v >= lo && v <= hi) return json(v.convert_to<long long>());
  return json(v.str());
}

Rat rat_from(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError(where + ": not a rational \"n\" or \"n/d\" string");
    }
  }
  if (v.is_number_integer() || v.is_number_unsigned()) return Rat(int_from(v, where));
  throw ParseError(where + ": expected a rational");
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key \"" + key + "\"");
  return *it;
}

std::string file_contents(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

// ---- instance documents ----

json instance_to_json(const ProblemInstance& inst) {
  json j;
  if (!inst.label.empty()) j["label"] = inst.label;
  json rows = json::array();
  for (Eigen::Index i = 0; i < inst.a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < inst.a.cols(); ++k) row.push_back(int_to_json(inst.a(i, k)));
    rows.push_back(std::move(row));
  }
  j["A"] = std::move(rows);
  json b = json::array();
  for (Eigen::Index i = 0; i < inst.b.size(); ++i) b.push_back(int_to_json(inst.b[i]));
  j["b"] = std::move(b);
  if (inst.graph_hint) {
    json h;
    h["nodes"] = inst.graph_hint->nodes;
    json arcs = json::array();
    for (const auto& [t, hd] : inst.graph_hint->arcs) arcs.push_back(json::array({t, hd}));
    h["arcs"] = std::move(arcs);
    json cm = json::array();
    for (const Eigen::Index c : inst.graph_hint->column_map) cm.push_back(static_cast<long long>(c));
    h["column_map"] = std::move(cm);
    j["graph_hint"] = std::move(h);
  }
  if (inst.trusted_profile) {
    json p;
    p["delta"] = int_to_json(inst.trusted_profile->delta);
    p["gcd"] = int_to_json(inst.trusted_profile->gcd);
    p["strict"] = inst.trusted_profile->strict;
    j["trusted_profile"] = std::move(p);
  }
  return j;
}

}  // namespace

ProblemInstance parse_instance_text(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("top level: expected an object");

  ProblemInstance inst;
  const json& a = member(j, "A", "top level");
  if (!a.is_array() || a.empty()) throw ParseError("\"A\": expected a nonempty array of rows");
  const auto m = static_cast<Eigen::Index>(a.size());
  if (!a[0].is_array() || a[0].empty())
    throw ParseError("\"A\" row 0: expected a nonempty array of integers");
  const auto n = static_cast<Eigen::Index>(a[0].size());
  inst.a.resize(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const json& row = a[static_cast<std::size_t>(i)];
    if (!row.is_array())
      throw ParseError("\"A\" row " + std::to_string(i) + ": expected an array");
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw ParseError("\"A\" row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(n));
    for (Eigen::Index k = 0; k < n; ++k)
      inst.a(i, k) = int_from(row[static_cast<std::size_t>(k)],
                              "\"A\" row " + std::to_string(i) + " column " + std::to_string(k));
  }

  const json& b = member(j, "b", "top level");
  if (!b.is_array() || static_cast<Eigen::Index>(b.size()) != m)
    throw ParseError("\"b\" must list exactly " + std::to_string(m) +
                     " integers, one per row of \"A\"");
  inst.b.resize(m);
  for (Eigen::Index i = 0; i < m; ++i)
    inst.b[i] = int_from(b[static_cast<std::size_t>(i)], "\"b\" entry " + std::to_string(i));

  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("\"label\": expected a string");
    inst.label = j["label"].get<std::string>();
  }

  if (j.contains("graph_hint")) {
    const json& h = j["graph_hint"];
    GraphHint hint;
    const json& nodes = member(h, "nodes", "\"graph_hint\"");
    if (!nodes.is_number_integer() && !nodes.is_number_unsigned())
      throw ParseError("\"graph_hint\".nodes: expected an integer");
    hint.nodes = nodes.get<int>();
    const json& arcs = member(h, "arcs", "\"graph_hint\"");
    if (!arcs.is_array()) throw ParseError("\"graph_hint\".arcs: expected an array");
    for (std::size_t t = 0; t < arcs.size(); ++t) {
      const json& arc = arcs[t];
      if (!arc.is_array() || arc.size() != 2)
        throw ParseError("\"graph_hint\".arcs entry " + std::to_string(t) +
                         ": expected a [tail, head] pair");
      hint.arcs.emplace_back(arc[0].get<int>(), arc[1].get<int>());
    }
    const json& cm = member(h, "column_map", "\"graph_hint\"");
    if (!cm.is_array()) throw ParseError("\"graph_hint\".column_map: expected an array");
    for (std::size_t t = 0; t < cm.size(); ++t)
      hint.column_map.push_back(static_cast<Eigen::Index>(
          int_from(cm[t], "\"graph_hint\".column_map entry " + std::to_string(t))
              .convert_to<long long>()));
    inst.graph_hint = std::move(hint);
  }

  if (j.contains("trusted_profile")) {
    const json& p = j["trusted_profile"];
    TrustedProfile prof;
    prof.delta = int_from(member(p, "delta", "\"trusted_profile\""), "\"trusted_profile\".delta");
    prof.gcd = int_from(member(p, "gcd", "\"trusted_profile\""), "\"trusted_profile\".gcd");
    const json& strict = member(p, "strict", "\"trusted_profile\"");
    if (!strict.is_boolean()) throw ParseError("\"trusted_profile\".strict: expected a boolean");
    prof.strict = strict.get<bool>();
    inst.trusted_profile = prof;
  }

  try {
    validate_instance(inst);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return inst;
}

ProblemInstance parse_instance(const std::string& path) {
  return parse_instance_text(file_contents(path));
}

std::string instance_to_text(const ProblemInstance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

void emit_instance(const ProblemInstance& inst, const std::string& path) {
  write_file(path, instance_to_text(inst));
}

// ---- formulation emission ----

namespace {

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::pure_cone:
      return "pure_cone";
    case Branch::apex:
      return "apex";
    case Branch::circulation:
      return "circulation";
  }
  return "unknown";
}

Branch branch_from(const std::string& name) {
  if (name == "pure_cone") return Branch::pure_cone;
  if (name == "apex") return Branch::apex;
  if (name == "circulation") return Branch::circulation;
  throw ParseError("\"branch\": unknown value \"" + name + "\"");
}

std::string sense_name(RowSense s) {
  switch (s) {
    case RowSense::eq:
      return "eq";
    case RowSense::le:
      return "le";
    case RowSense::ge:
      return "ge";
  }
  return "unknown";
}

RowSense sense_from(const std::string& name) {
  if (name == "eq") return RowSense::eq;
  if (name == "le") return RowSense::le;
  if (name == "ge") return RowSense::ge;
  throw ParseError("row sense: unknown value \"" + name + "\"");
}

std::vector<std::string> variable_names(const ExtendedFormulation& ef) {
  std::vector<std::string> names(static_cast<std::size_t>(ef.num_vars));
  for (const VariableBlock& blk : ef.blocks) {
    std::string base = blk.name;
    std::replace(base.begin(), base.end(), ':', '_');
    for (int i = 0; i < blk.size; ++i)
      names[static_cast<std::size_t>(blk.offset + i)] = base + "_" + std::to_string(i);
  }
  for (std::size_t v = 0; v < names.size(); ++v)
    if (names[v].empty()) names[v] = "v" + std::to_string(v);
  return names;
}

// Row scaled by the lcm of its denominators, so LP and MPS stay integral.
struct ClearedRow {
  std::vector<std::pair<int, Int>> terms;
  Int rhs;
};

ClearedRow clear_row(const LpRow& row) {
  Int l = denominator(row.rhs);
  for (const auto& [v, q] : row.terms) l = int_lcm(l, denominator(q));
  ClearedRow out;
  out.rhs = numerator(row.rhs) * (l / denominator(row.rhs));
  out.terms.reserve(row.terms.size());
  for (const auto& [v, q] : row.terms)
    out.terms.emplace_back(v, numerator(q) * (l / denominator(q)));
  return out;
}

std::string lp_text(const EfArtifact& art) {
  const ExtendedFormulation& ef = art.formulation;
  const std::vector<std::string> names = variable_names(ef);
  std::ostringstream os;
  os << "\\ " << (art.label.empty() ? "formulation" : art.label) << "\n";
  os << "\\ branch " << branch_name(art.branch) << ", row tags follow\n";
  for (std::size_t i = 0; i < ef.rows.size(); ++i)
    os << "\\ R" << i << " " << ef.rows[i].tag << "\n";
  os << "Minimize\n obj: 0 " << names.front() << "\n";
  os << "Subject To\n";
  for (std::size_t i = 0; i < ef.rows.size(); ++i) {
    const ClearedRow row = clear_row(ef.rows[i].row);
    os << " R" << i << ":";
    if (row.terms.empty()) os << " 0 " << names.front();
    for (std::size_t t = 0; t < row.terms.size(); ++t) {
      const Int& c = row.terms[t].second;
      if (t == 0)
        os << " " << c.str();
      else
        os << (c < 0 ? " - " + Int(-c).str() : " + " + c.str());
      os << " " << names[static_cast<std::size_t>(row.terms[t].first)];
    }
    switch (ef.rows[i].row.sense) {
      case RowSense::eq:
        os << " = ";
        break;
      case RowSense::le:
        os << " <= ";
        break;
      case RowSense::ge:
        os << " >= ";
        break;
    }
    os << row.rhs.str() << "\n";
  }
  os << "Bounds\n";
  for (const std::string& name : names) os << " " << name << " free\n";
  os << "End\n";
  return os.str();
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string row_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "R%06zu", i);
  return buf;
}

std::string col_id(std::size_t j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "X%06zu", j);
  return buf;
}

// Fixed-field layout: indicator in columns 2-3, names at columns 5 and 15,
// values at column 25.
std::string mps_text(const EfArtifact& art) {
  const ExtendedFormulation& ef = art.formulation;
  std::ostringstream os;
  os << "NAME          DELTAEF\n";
  for (std::size_t i = 0; i < ef.rows.size(); ++i)
    os << "* " << row_id(i) << " " << ef.rows[i].tag << "\n";
  os << "ROWS\n";
  os << " N  COST\n";
  std::vector<ClearedRow> cleared;
  cleared.reserve(ef.rows.size());
  for (std::size_t i = 0; i < ef.rows.size(); ++i) {
    cleared.push_back(clear_row(ef.rows[i].row));
    char ind = 'E';
    if (ef.rows[i].row.sense == RowSense::le) ind = 'L';
    if (ef.rows[i].row.sense == RowSense::ge) ind = 'G';
    os << " " << ind << "  " << row_id(i) << "\n";
  }
  std::vector<std::vector<std::pair<std::size_t, Int>>> by_var(
      static_cast<std::size_t>(ef.num_vars));
  for (std::size_t i = 0; i < cleared.size(); ++i)
    for (const auto& [v, c] : cleared[i].terms)
      by_var[static_cast<std::size_t>(v)].emplace_back(i, c);
  os << "COLUMNS\n";
  for (std::size_t v = 0; v < by_var.size(); ++v) {
    os << "    " << pad(col_id(v), 10) << pad("COST", 10) << "0\n";
    for (const auto& [i, c] : by_var[v])
      os << "    " << pad(col_id(v), 10) << pad(row_id(i), 10) << c.str() << "\n";
  }
  os << "RHS\n";
  for (std::size_t i = 0; i < cleared.size(); ++i)
    if (cleared[i].rhs != 0)
      os << "    " << pad("RHS1", 10) << pad(row_id(i), 10) << cleared[i].rhs.str() << "\n";
  os << "BOUNDS\n";
  for (std::size_t v = 0; v < by_var.size(); ++v)
    os << " FR " << pad("BND1", 10) << col_id(v) << "\n";
  os << "ENDATA\n";
  return os.str();
}

json artifact_to_json(const EfArtifact& art) {
  const ExtendedFormulation& ef = art.formulation;
  json j;
  j["label"] = art.label;
  j["branch"] = branch_name(art.branch);
  j["coset_target"] = art.coset_target;

  json f;
  f["num_vars"] = ef.num_vars;
  f["declared_inequality_bound"] = ef.declared_inequality_bound;
  json blocks = json::array();
  for (const VariableBlock& blk : ef.blocks)
    blocks.push_back(json{{"name", blk.name}, {"offset", blk.offset}, {"size", blk.size}});
  f["blocks"] = std::move(blocks);
  json rows = json::array();
  for (const FormulationRow& fr : ef.rows) {
    json r;
    r["tag"] = fr.tag;
    r["sense"] = sense_name(fr.row.sense);
    r["rhs"] = rat_to_string(fr.row.rhs);
    json terms = json::array();
    for (const auto& [v, q] : fr.row.terms) terms.push_back(json::array({v, rat_to_string(q)}));
    r["terms"] = std::move(terms);
    rows.push_back(std::move(r));
  }
  f["rows"] = std::move(rows);
  json proj;
  proj["rows"] = static_cast<long long>(ef.projection.rows());
  proj["cols"] = static_cast<long long>(ef.projection.cols());
  json entries = json::array();
  for (Eigen::Index i = 0; i < ef.projection.rows(); ++i)
    for (Eigen::Index k = 0; k < ef.projection.cols(); ++k)
      if (ef.projection(i, k) != 0)
        entries.push_back(json::array({static_cast<long long>(i), static_cast<long long>(k),
                                       rat_to_string(ef.projection(i, k))}));
  proj["entries"] = std::move(entries);
  f["projection"] = std::move(proj);
  json offset = json::array();
  for (Eigen::Index i = 0; i < ef.projection_offset.size(); ++i)
    offset.push_back(rat_to_string(ef.projection_offset[i]));
  f["projection_offset"] = std::move(offset);
  j["formulation"] = std::move(f);

  json sz;
  sz["total_rows"] = art.size.total_rows;
  sz["equation_rows"] = art.size.equation_rows;
  sz["inequality_rows"] = art.size.inequality_rows;
  sz["linking_rows"] = art.size.linking_rows;
  sz["disjunction_inequality_bound"] = art.size.disjunction_inequality_bound;
  sz["apex_facet_bound"] = art.size.apex_facet_bound;
  sz["polynomial_bound"] = art.size.polynomial_bound;
  sz["base_nodes"] = art.size.base_nodes;
  sz["layered_arcs"] = art.size.layered_arcs;
  sz["note"] = art.size.note;
  j["size"] = std::move(sz);
  return j;
}

}  // namespace

std::string emit_to_text(const EfArtifact& art, EmitFormat format) {
  switch (format) {
    case EmitFormat::lp:
      return lp_text(art);
    case EmitFormat::mps:
      return mps_text(art);
    case EmitFormat::json:
      return artifact_to_json(art).dump(2) + "\n";
  }
  throw std::logic_error("unknown emission format");
}

void emit(const EfArtifact& art, EmitFormat format, const std::string& path) {
  write_file(path, emit_to_text(art, format));
}

EfArtifact parse_artifact_text(const std::string& text) {
  const json j = parse_json(text);
  EfArtifact art;
  const json& label = member(j, "label", "top level");
  if (!label.is_string()) throw ParseError("\"label\": expected a string");
  art.label = label.get<std::string>();
  art.branch = branch_from(member(j, "branch", "top level").get<std::string>());
  art.coset_target = member(j, "coset_target", "top level").get<int>();

  const json& f = member(j, "formulation", "top level");
  ExtendedFormulation& ef = art.formulation;
  ef.num_vars = member(f, "num_vars", "\"formulation\"").get<int>();
  ef.declared_inequality_bound =
      member(f, "declared_inequality_bound", "\"formulation\"").get<long>();
  for (const json& blk : member(f, "blocks", "\"formulation\"")) {
    VariableBlock b;
    b.name = member(blk, "name", "block").get<std::string>();
    b.offset = member(blk, "offset", "block").get<int>();
    b.size = member(blk, "size", "block").get<int>();
    ef.blocks.push_back(std::move(b));
  }
  for (const json& row : member(f, "rows", "\"formulation\"")) {
    FormulationRow fr;
    fr.tag = member(row, "tag", "row").get<std::string>();
    fr.row.sense = sense_from(member(row, "sense", "row").get<std::string>());
    fr.row.rhs = rat_from(member(row, "rhs", "row"), "row rhs");
    for (const json& term : member(row, "terms", "row")) {
      if (!term.is_array() || term.size() != 2)
        throw ParseError("row term: expected a [variable, coefficient] pair");
      fr.row.terms.emplace_back(term[0].get<int>(), rat_from(term[1], "row term"));
    }
    ef.rows.push_back(std::move(fr));
  }
  const json& proj = member(f, "projection", "\"formulation\"");
  const auto pr = member(proj, "rows", "\"projection\"").get<Eigen::Index>();
  const auto pc = member(proj, "cols", "\"projection\"").get<Eigen::Index>();
  ef.projection = RatMatrix::Zero(pr, pc);
  for (const json& entry : member(proj, "entries", "\"projection\"")) {
    if (!entry.is_array() || entry.size() != 3)
      throw ParseError("projection entry: expected [row, column, value]");
    ef.projection(entry[0].get<Eigen::Index>(), entry[1].get<Eigen::Index>()) =
        rat_from(entry[2], "projection entry");
  }
  const json& offset = member(f, "projection_offset", "\"formulation\"");
  ef.projection_offset.resize(static_cast<Eigen::Index>(offset.size()));
  for (Eigen::Index i = 0; i < ef.projection_offset.size(); ++i)
    ef.projection_offset[i] = rat_from(offset[static_cast<std::size_t>(i)], "projection offset");

  const json& sz = member(j, "size", "top level");
  art.size.total_rows = member(sz, "total_rows", "\"size\"").get<long>();
  art.size.equation_rows = member(sz, "equation_rows", "\"size\"").get<long>();
  art.size.inequality_rows = member(sz, "inequality_rows", "\"size\"").get<long>();
  art.size.linking_rows = member(sz, "linking_rows", "\"size\"").get<long>();
  art.size.disjunction_inequality_bound =
      member(sz, "disjunction_inequality_bound", "\"size\"").get<long>();
  art.size.apex_facet_bound = member(sz, "apex_facet_bound", "\"size\"").get<long>();
  art.size.polynomial_bound = member(sz, "polynomial_bound", "\"size\"").get<long>();
  art.size.base_nodes = member(sz, "base_nodes", "\"size\"").get<int>();
  art.size.layered_arcs = member(sz, "layered_arcs", "\"size\"").get<long>();
  art.size.note = member(sz, "note", "\"size\"").get<std::string>();
  return art;
}

std::string report_to_text(const VerificationReport& rep) {
  json j;
  j["label"] = rep.label;
  j["pass"] = rep.pass;
  j["summary"] = rep.summary;
  j["lattice_points"] = rep.lattice_points;
  j["hull_empty"] = rep.hull_empty;
  j["membership_checked"] = rep.membership_checked;
  json mf = json::array();
  for (const IntVector& p : rep.membership_failures) {
    json row = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(int_to_json(p[i]));
    mf.push_back(std::move(row));
  }
  j["membership_failures"] = std::move(mf);
  j["objectives_tested"] = rep.objectives_tested;
  j["objectives_skipped"] = rep.objectives_skipped;
  j["matches"] = rep.matches;
  json mm = json::array();
  for (const ObjectiveMismatch& m : rep.mismatches) {
    json e;
    json c = json::array();
    for (Eigen::Index i = 0; i < m.objective.size(); ++i) c.push_back(int_to_json(m.objective[i]));
    e["objective"] = std::move(c);
    e["ef"] = m.ef_outcome;
    e["oracle"] = m.oracle_outcome;
    mm.push_back(std::move(e));
  }
  j["mismatches"] = std::move(mm);
  j["ray_checks"] = rep.ray_checks;
  j["ray_failures"] = rep.ray_failures;
  j["radius_boundary_active"] = rep.radius_boundary_active;
  j["inconclusive"] = rep.inconclusive;
  return j.dump(2) + "\n";
}

// ---- command line ----

namespace {

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::accept:
      return 0;
    case Verdict::reject:
      return 2;
    case Verdict::undecided:
      return 3;
  }
  return 3;
}

const char* status_word(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::ok:
      return "ok";
    case ConditionStatus::fail:
      return "fail";
    case ConditionStatus::undecided:
      return "undecided";
  }
  return "undecided";
}

void print_conditions(const ProblemInstance& inst, const ConditionReport& rep) {
  if (!inst.label.empty()) std::cout << "label: " << inst.label << "\n";
  std::cout << "(i) strictly modular: " << status_word(rep.strictly_modular) << "\n";
  std::cout << "(ii) cographic rows: " << status_word(rep.cographic) << "\n";
  std::cout << "(iii) b in the column span: " << status_word(rep.span) << "\n";
  if (rep.profile) {
    std::cout << "profile: delta=" << rep.profile->delta.str() << " gcd=" << rep.profile->gcd.str()
              << " strict=" << (rep.profile->strictly_modular ? "yes" : "no")
              << (rep.profile_trusted ? " (trusted)" : "") << "\n";
  }
  for (const std::string& note : rep.notes) std::cout << "note: " << note << "\n";
  std::cout << "verdict: "
            << (rep.verdict == Verdict::accept
                    ? "accept"
                    : rep.verdict == Verdict::reject ? "reject" : "undecided")
            << "\n";
}

EmitFormat format_from(const std::string& name) {
  if (name == "lp") return EmitFormat::lp;
  if (name == "mps") return EmitFormat::mps;
  return EmitFormat::json;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"exact extended formulations for integer hulls of strictly modular systems"};
  app.require_subcommand(1);

  long delta_cap = 6;
  long enum_cap = 10000000;
  app.add_option("--delta-cap", delta_cap, "cap on the uniform minor magnitude")
      ->check(CLI::PositiveNumber);
  app.add_option("--enum-cap", enum_cap, "cap on brute-force enumeration volume")
      ->check(CLI::PositiveNumber);

  std::string check_file;
  CLI::App* check = app.add_subcommand("check", "evaluate the admission conditions");
  check->add_option("file", check_file, "instance document")->required();

  std::string build_file, build_out, build_format = "json";
  CLI::App* build = app.add_subcommand("build", "construct and write the formulation");
  build->add_option("file", build_file, "instance document")->required();
  build->add_option("--out", build_out, "output path")->required();
  build->add_option("--format", build_format, "lp, mps, or json (default json)")
      ->check(CLI::IsMember({"lp", "mps", "json"}));

  std::string verify_file;
  long radius = 6, objectives = 25;
  unsigned long long seed = 1;
  CLI::App* verify = app.add_subcommand("verify", "certify the formulation against brute force");
  verify->add_option("file", verify_file, "instance document")->required();
  verify->add_option("--radius", radius, "enumeration radius around the apex");
  verify->add_option("--objectives", objectives, "number of seeded objectives");
  verify->add_option("--seed", seed, "objective sampling seed");

  std::string gen_kind, gen_out;
  int gen_r = 4, gen_size = 2, gen_k = 5;
  long gen_det = 1;
  CLI::App* gen = app.add_subcommand("gen", "write a generated instance");
  gen->add_option("kind", gen_kind, "dual-complete, cevallos, jia, or odd-cycle")
      ->required()
      ->check(CLI::IsMember({"dual-complete", "cevallos", "jia", "odd-cycle"}));
  gen->add_option("--out", gen_out, "output path")->required();
  gen->add_option("--r", gen_r, "dual-complete: node count (4..7)");
  gen->add_option("--det", gen_det, "dual-complete: scale determinant, diag(det, 1, ..., 1)");
  gen->add_option("--size", gen_size, "cevallos: node count (even); jia: bipartite side");
  gen->add_option("--k", gen_k, "odd-cycle: cycle length (odd)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 64;
  }

  PipelineLimits limits;
  limits.delta_cap = Int(delta_cap);

  try {
    if (*check) {
      const ProblemInstance inst = parse_instance(check_file);
      const ConditionReport rep = check_conditions(inst, limits);
      print_conditions(inst, rep);
      return verdict_code(rep.verdict);
    }
    if (*build) {
      const ProblemInstance inst = parse_instance(build_file);
      const ConditionReport rep = check_conditions(inst, limits);
      if (rep.verdict != Verdict::accept) {
        print_conditions(inst, rep);
        return verdict_code(rep.verdict);
      }
      const EfArtifact art = build_ef(inst, limits);
      emit(art, format_from(build_format), build_out);
      std::cout << "wrote " << build_out << ": branch " << branch_name(art.branch) << ", "
                << art.formulation.rows.size() << " rows, "
                << art.formulation.inequality_count() << " inequalities\n";
      return 0;
    }
    if (*verify) {
      const ProblemInstance inst = parse_instance(verify_file);
      const ConditionReport rep = check_conditions(inst, limits);
      if (rep.verdict != Verdict::accept) {
        print_conditions(inst, rep);
        return verdict_code(rep.verdict);
      }
      const EfArtifact art = build_ef(inst, limits);
      const VerificationReport vrep =
          verify_hull(art, inst, radius, objectives, static_cast<unsigned long>(seed), enum_cap);
      std::cout << report_to_text(vrep);
      if (vrep.pass) return 0;
      return vrep.inconclusive ? 3 : 2;
    }
    ProblemInstance inst;
    (void)*gen;
    if (gen_kind == "dual-complete") {
      const int n = (gen_r - 1) * (gen_r - 2) / 2;
      IntMatrix scale = IntMatrix::Identity(n, n);
      scale(0, 0) = Int(gen_det);
      inst = gen_dual_complete(gen_r, scale, limits);
    } else if (gen_kind == "cevallos") {
      inst = gen_counterexample(CounterexampleKind::cevallos, gen_size);
    } else if (gen_kind == "jia") {
      inst = gen_counterexample(CounterexampleKind::jia, gen_size);
    } else {
      inst = gen_odd_cycle_stab(gen_k);
    }
    emit_instance(inst, gen_out);
    std::cout << "wrote " << gen_out << ": " << inst.label << "\n";
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 64;
  } catch (const CapExceededError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
}

}  // namespace deltaef
