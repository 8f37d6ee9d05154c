#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sphc/census.hpp"
#include "sphc/cli.hpp"
#include "sphc/error.hpp"
#include "sphc/sphericity.hpp"

namespace sphc {

namespace {

using json = nlohmann::ordered_json;

int default_jobs() { return std::max(1, int(std::thread::hardware_concurrency())); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_bool(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }

json opt_json(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

template <class T>
json int_map(const std::map<int, T>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

std::vector<int> parse_q_list(const std::string& text) {
  std::vector<int> qs;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    int q = 0;
    try {
      q = std::stoi(part);
    } catch (const std::exception&) {
      throw Error("malformed field size '" + part + "'");
    }
    if (q < 2 || q > 256 || (q & (q - 1))) throw Error("field size " + part + " is not a power of 2 in [2, 256]");
    qs.push_back(q);
  }
  if (qs.empty()) throw Error("empty field size list");
  return qs;
}

// ---------------------------------------------------------------- tables

struct TablesArgs {
  std::string series;
  int rank = 0;
  int characteristic = 2;
};

std::optional<TableRow> matching_row(const std::vector<TableRow>& rows, Series s, int rank, int p, const std::string& name) {
  for (const auto& r : rows)
    if (r.series == s && r.rank == rank && r.class_name == name && (r.characteristic == p || r.characteristic == 0) &&
        r.twist == TwistKind::None)
      return r;
  return std::nullopt;
}

int cmd_tables(const TablesArgs& a, const std::string& format, std::ostream& out) {
  const Series s = parse_series(a.series);
  const auto classes = spherical_unipotent_classes(s, a.rank, a.characteristic);
  TableLimits limits;
  limits.max_classical_rank = std::max(limits.max_classical_rank, a.rank);
  const auto rows = builtin_tables(limits);
  auto rs = RootSystem::build(s, a.rank);
  const std::string note = "every unipotent class not listed is non-spherical";
  json j;
  j["type"] = rs->name();
  j["characteristic"] = a.characteristic;
  j["classes"] = json::array();
  for (const auto& c : classes) {
    json e;
    e["name"] = c.name;
    e["label"] = c.label ? json(c.label->str()) : json(nullptr);
    e["dim"] = c.dim;
    e["involutions"] = c.consists_of_involutions;
    if (auto row = matching_row(rows, s, a.rank, a.characteristic, c.name)) {
      json roots = json::array();
      for (const auto& r : row->w_roots) roots.push_back(rs->format_root(r));
      e["w_roots"] = roots;
      e["w"] = row_element(*row).weyl().word_string();
      e["J"] = row->J ? json(*row->J) : json(nullptr);
    }
    j["classes"].push_back(e);
  }
  j["note"] = note;
  if (format == "json") {
    out << j.dump(2) << "\n";
  } else if (format == "csv") {
    out << "name,label,dim,involutions,w\n";
    for (const auto& e : j["classes"])
      out << csv_cell(e["name"]) << "," << csv_cell(e["label"].is_null() ? "" : e["label"].get<std::string>()) << ","
          << e["dim"].get<int>() << "," << (e["involutions"].get<bool>() ? "true" : "false") << ","
          << csv_cell(e.contains("w") ? e["w"].get<std::string>() : "") << "\n";
  } else {
    out << rs->name() << " in characteristic " << a.characteristic << "\n";
    for (const auto& e : j["classes"]) {
      out << "  " << e["name"].get<std::string>() << "  dim " << e["dim"].get<int>();
      if (!e["label"].is_null()) out << "  " << e["label"].get<std::string>();
      if (e.contains("w")) out << "  w = " << e["w"].get<std::string>();
      out << "\n";
    }
    out << note << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  bool all = false;
  int max_rank = 0;
  std::string table;
  std::string row;
  int jobs = 0;
};

// "C:X:2" -> series C, class X_2; "E:3A1" -> series E, class 3A1.
bool row_selected(const TableRow& r, const VerifyArgs& a) {
  if (!a.table.empty() && r.table_id != a.table) return false;
  if (a.row.empty()) return true;
  std::vector<std::string> parts;
  std::istringstream in(a.row);
  std::string p;
  while (std::getline(in, p, ':')) parts.push_back(p);
  if (parts.size() < 2 || parts.size() > 3) throw Error("row selector must be SERIES:NAME or SERIES:FAMILY:INDEX");
  if (parse_series(parts[0]) != r.series) return false;
  const std::string name = parts.size() == 3 ? parts[1] + "_" + parts[2] : parts[1];
  return r.class_name == name;
}

json report_json(const SphericityReport& r) {
  json j;
  j["id"] = r.row.id();
  j["table"] = r.row.table_id;
  j["class"] = r.row.class_name;
  j["type"] = std::string(1, series_char(r.row.series)) + std::to_string(r.row.rank);
  j["characteristic"] = r.row.characteristic;
  j["twist"] = twist_kind_name(r.row.twist);
  j["claimed_dim"] = r.row.claimed_dim;
  j["length"] = r.computed_length;
  j["rank_term"] = r.computed_rank;
  j["criterion_value"] = r.criterion_value;
  j["dim_match"] = r.dim_match;
  j["j_match"] = opt_json(r.j_match);
  j["rep_label_match"] = opt_json(r.rep_label_match);
  j["rep_cell_match"] = opt_json(r.rep_cell_match);
  j["rep_involution_check"] = opt_json(r.rep_involution_check);
  j["checked"] = r.checked;
  j["passed"] = r.passed();
  j["detail"] = r.detail;
  return j;
}

int cmd_verify(const VerifyArgs& a, const Config& cfg, const std::string& format, std::ostream& out) {
  if (a.all && (!a.table.empty() || !a.row.empty())) throw Error("--all cannot be combined with --table or --row");
  TableLimits limits;
  limits.max_classical_rank = a.max_rank > 0 ? a.max_rank : cfg.max_classical_rank;
  if (limits.max_classical_rank > 12) throw Error("--max-rank is limited to 12");
  const auto summary = verify_all(limits, a.jobs > 0 ? a.jobs : default_jobs());
  std::vector<const SphericityReport*> chosen;
  for (const auto& r : summary.reports)
    if (row_selected(r.row, a)) chosen.push_back(&r);
  if (chosen.empty()) throw Error("no built-in row matches the selection");
  int passed = 0, failed = 0, skipped = 0;
  for (const auto* r : chosen) {
    if (!r->checked) ++skipped;
    else if (r->passed()) ++passed;
    else ++failed;
  }
  if (format == "json") {
    json j;
    j["max_classical_rank"] = limits.max_classical_rank;
    j["passed"] = passed;
    j["failed"] = failed;
    j["skipped"] = skipped;
    j["rows"] = json::array();
    for (const auto* r : chosen) j["rows"].push_back(report_json(*r));
    out << j.dump(2) << "\n";
  } else if (format == "csv") {
    out << "id,claimed_dim,length,rank_term,criterion_value,dim_match,j_match,rep_label_match,rep_cell_match,"
           "rep_involution_check,checked,passed\n";
    for (const auto* r : chosen)
      out << csv_cell(r->row.id()) << "," << r->row.claimed_dim << "," << r->computed_length << "," << r->computed_rank
          << "," << r->criterion_value << "," << (r->dim_match ? "true" : "false") << "," << opt_bool(r->j_match) << ","
          << opt_bool(r->rep_label_match) << "," << opt_bool(r->rep_cell_match) << ","
          << opt_bool(r->rep_involution_check) << "," << (r->checked ? "true" : "false") << ","
          << (r->passed() ? "true" : "false") << "\n";
  } else {
    for (const auto* r : chosen) {
      out << (r->checked ? (r->passed() ? "ok    " : "FAIL  ") : "skip  ") << r->row.id() << "  " << r->computed_length
          << "+" << r->computed_rank << "=" << r->criterion_value << " (claimed " << r->row.claimed_dim << ")";
      if (!r->detail.empty()) out << "  " << r->detail;
      out << "\n";
    }
    out << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  }
  return failed ? kExitFailure : kExitOk;
}

// ---------------------------------------------------------------- census

struct CensusArgs {
  std::string group;
  int n = 0;
  std::string qs;
  bool b_orbits = false;
  bool cells = false;
  bool outer = false;
  std::vector<std::string> classes;
  std::string memory_limit;
  int jobs = 0;
};

json census_json(const CensusReport& r) {
  json j;
  j["group"] = r.group;
  j["qs"] = r.qs;
  j["total"] = int_map(r.total);
  j["expected_total"] = int_map(r.expected_total);
  json complete = json::object();
  for (int q : r.qs)
    if (r.total.count(q)) complete[std::to_string(q)] = r.complete(q);
  j["complete"] = complete;
  j["omissions"] = r.omissions;
  j["classes"] = json::array();
  for (const auto& c : r.classes) {
    json e;
    e["label"] = c.label.str();
    e["size"] = int_map(c.size);
    e["rational_classes"] = int_map(c.rational_classes);
    e["rational_sizes"] = int_map(c.rational_sizes);
    e["dim_estimate"] = c.dim_estimate ? json(*c.dim_estimate) : json(nullptr);
    e["dim_lower_bound"] = c.dim_lower_bound;
    if (!c.max_b_orbit.empty()) {
      e["max_b_orbit"] = int_map(c.max_b_orbit);
      e["b_orbit_count"] = int_map(c.b_orbit_count);
      e["max_b_orbit_degree"] = c.max_b_orbit_degree ? json(*c.max_b_orbit_degree) : json(nullptr);
    }
    e["verdict"] = verdict_name(c.verdict);
    e["verdict_reason"] = c.verdict_reason;
    if (!c.cells.empty()) {
      json cells = json::object();
      for (const auto& [q, hist] : c.cells) {
        json h = json::array();
        for (const auto& [w, count] : hist) h.push_back({{"w", w.word_string()}, {"count", count}});
        cells[std::to_string(q)] = h;
      }
      e["cells"] = cells;
    }
    j["classes"].push_back(e);
  }
  return j;
}

void census_text(const CensusReport& r, std::ostream& out) {
  out << r.group << " unipotent classes\n";
  for (const auto& c : r.classes) {
    out << "  " << c.label.str();
    for (const auto& [q, s] : c.size) out << "  q=" << q << ": " << s << " (" << c.rational_classes.at(q) << " rational)";
    if (c.dim_estimate) out << "  dim~" << *c.dim_estimate;
    out << "  " << verdict_name(c.verdict) << "\n";
  }
  for (const auto& [q, t] : r.total) out << "total q=" << q << ": " << t << " of " << r.expected_total.at(q) << "\n";
  for (const auto& o : r.omissions) out << "omitted: " << o << "\n";
}

int cmd_outer(const CensusArgs& a, const std::vector<int>& qs, uint64_t limit, const std::string& format,
              std::ostream& out) {
  const GroupKind kind = parse_group_kind(a.group);
  if (kind != GroupKind::SO && kind != GroupKind::O) throw Error("--outer needs --group so or o");
  json j;
  j["group"] = "O(" + std::to_string(2 * a.n) + ")";
  j["censuses"] = json::array();
  std::vector<std::string> omissions;
  bool ok = true;
  for (int q : qs) {
    try {
      const auto oc = outer_coset_census(a.n, q, limit);
      json e;
      e["q"] = q;
      e["group_order"] = oc.group_order;
      e["odd_k_expected"] = oc.odd_k_expected;
      e["types_match"] = oc.types_match;
      e["buckets"] = json::array();
      for (const auto& b : oc.buckets)
        e["buckets"].push_back(
            {{"type", b.type.str()}, {"label", b.label.str()}, {"count", b.count}, {"so_classes", b.so_classes}});
      ok = ok && oc.types_match;
      j["censuses"].push_back(e);
    } catch (const ResourceError& e) {
      omissions.push_back("q=" + std::to_string(q) + ": " + e.what());
    }
  }
  j["omissions"] = omissions;
  if (format == "json") {
    out << j.dump(2) << "\n";
  } else if (format == "csv") {
    out << "q,type,label,count,so_classes\n";
    for (const auto& c : j["censuses"])
      for (const auto& b : c["buckets"])
        out << c["q"].get<int>() << "," << b["type"].get<std::string>() << "," << csv_cell(b["label"].get<std::string>())
            << "," << b["count"].get<uint64_t>() << "," << b["so_classes"].get<int>() << "\n";
  } else {
    for (const auto& c : j["censuses"]) {
      out << "O(" << 2 * a.n << ", " << c["q"].get<int>() << "), order " << c["group_order"].get<uint64_t>() << "\n";
      for (const auto& b : c["buckets"])
        out << "  " << b["type"].get<std::string>() << ": " << b["count"].get<uint64_t>() << " involutions, "
            << b["so_classes"].get<int>() << " SO-class(es)\n";
      out << "  odd-k types only: " << (c["types_match"].get<bool>() ? "yes" : "no") << "\n";
    }
    for (const auto& o : omissions) out << "omitted: " << o << "\n";
  }
  if (!omissions.empty()) return kExitResource;
  return ok ? kExitOk : kExitFailure;
}

int cmd_census(const CensusArgs& a, const Config& cfg, const std::string& format, std::ostream& out) {
  if (a.n < 1) throw Error("--n must be positive");
  CensusOptions o;
  o.qs = a.qs.empty() ? cfg.probe_qs : parse_q_list(a.qs);
  o.memory_limit = a.memory_limit.empty() ? cfg.memory_limit : parse_byte_size(a.memory_limit);
  o.jobs = a.jobs > 0 ? a.jobs : default_jobs();
  o.b_orbits = a.b_orbits;
  o.cells = a.cells;
  if (a.outer) return cmd_outer(a, o.qs, o.memory_limit, format, out);
  const GroupKind kind = parse_group_kind(a.group);
  for (const auto& text : a.classes) o.only.push_back(parse_label(kind, a.n, text));
  const auto report = run_census(kind, a.n, o);
  if (format == "json") {
    out << census_json(report).dump(2) << "\n";
  } else if (format == "csv") {
    out << "label,q,size,rational_classes,max_b_orbit,verdict\n";
    for (const auto& c : report.classes)
      for (const auto& [q, s] : c.size)
        out << csv_cell(c.label.str()) << "," << q << "," << s << "," << c.rational_classes.at(q) << ","
            << (c.max_b_orbit.count(q) ? std::to_string(c.max_b_orbit.at(q)) : "") << "," << verdict_name(c.verdict)
            << "\n";
  } else {
    census_text(report, out);
  }
  if (!report.omissions.empty()) return kExitResource;
  for (const auto& [q, t] : report.total)
    if (!report.complete(q)) return kExitFailure;
  return kExitOk;
}

// ---------------------------------------------------------------- bruhat

// Product of reflections in mutually orthogonal roots, for an involution.
std::string involution_text(const GroupSpec& spec, WeylElement w) {
  const auto& rs = w.root_system();
  std::string s;
  while (!w.is_identity()) {
    const auto& pos = rs->positive_roots();
    auto it = std::find_if(pos.rbegin(), pos.rend(), [&](const IntVec& a) {
      IntVec neg = a;
      for (int& c : neg) c = -c;
      return w.apply(a) == neg;
    });
    if (it == pos.rend()) throw InternalError("involution without a negated root");
    s += "s(" + spec.format_root(spec.from_simple_coords(*it)) + ")";
    w = w * WeylElement::reflection(rs, *it);
  }
  return s;
}

std::string weyl_text(const GroupSpec& spec, const WeylElement& w) {
  if (w.is_identity()) return "e";
  if (w.is_involution()) return involution_text(spec, w);
  return w.word_string();
}

std::string read_element_text(const std::string& element, const std::string& file) {
  std::string raw = element;
  if (!file.empty()) {
    std::ostringstream ss;
    if (file == "-") {
      ss << std::cin.rdbuf();
    } else {
      std::ifstream in(file);
      if (!in) throw Error("cannot read " + file);
      ss << in.rdbuf();
    }
    raw = ss.str();
  }
  if (raw.empty()) throw Error("no element given");
  // header and bit-plane lines may be separated by newlines, spaces or ';'
  std::replace(raw.begin(), raw.end(), ';', '\n');
  std::istringstream in(raw);
  std::string tok, text;
  while (in >> tok) text += tok + "\n";
  return text;
}

int cmd_bruhat(const std::string& element, const std::string& file, const std::string& format, std::ostream& out) {
  const ParsedElement p = deserialize(read_element_text(element, file));
  const bool form = has_form(p.kind);
  if (form && p.m % 2) throw Error("odd matrix size for a group with a form");
  GroupSpec spec(p.kind, form ? p.m / 2 : p.m, p.field);
  const auto& t = p.element;
  if (!spec.contains(t.g)) throw Error("element is not in " + spec.name());
  if (!spec.root_system()) throw Error(spec.name() + " has no root datum for Bruhat cells");
  std::string text;
  std::vector<int> word;
  int length = 0;
  std::string twist = "none";
  if (t.twist || (p.kind == GroupKind::O && dickson_invariant(spec, t.g) == 1)) {
    const TwistedElement te = t.twist ? bruhat_cell(spec, t) : bruhat_cell_outer(spec, t.g);
    text = "tau " + weyl_text(spec, te.weyl());
    word = te.weyl().reduced_word();
    length = te.weyl().length();
    twist = "graph";
  } else {
    const WeylElement w = bruhat_cell(spec, t.g);
    text = weyl_text(spec, w);
    word = w.reduced_word();
    length = w.length();
  }
  if (format == "json") {
    for (int& i : word) ++i;
    json j;
    j["group"] = spec.name();
    j["twist"] = twist;
    j["w"] = text;
    j["word"] = word;
    j["length"] = length;
    out << j.dump(2) << "\n";
  } else {
    out << text << "\n";
  }
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical unipotent classes in characteristic 2: table checks and finite-field censuses", "sphc"};
  app.require_subcommand(1);
  std::string format;
  app.add_option("--format", format, "json, csv or text (default from config, else json)")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "List the spherical unipotent classes of a type");
  tables->add_option("--series", ta.series, "A, B, C, D, E, F or G")->required();
  tables->add_option("--rank", ta.rank)->required();
  tables->add_option("--char", ta.characteristic, "characteristic (default 2)");
  tables->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check every built-in row against the dimension criterion");
  verify->add_flag("--all", va.all, "all rows (the default)");
  verify->add_option("--max-rank", va.max_rank, "largest rank for the classical families");
  verify->add_option("--table", va.table, "restrict to one table id");
  verify->add_option("--row", va.row, "SERIES:FAMILY:INDEX, e.g. C:X:2");
  verify->add_option("--jobs", va.jobs);
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));

  CensusArgs ca;
  auto* census = app.add_subcommand("census", "Enumerate unipotent classes over small fields");
  census->add_option("--group", ca.group, "gl, sl, sp, so or o")->required();
  census->add_option("--n", ca.n, "matrix size for gl/sl, half of it otherwise")->required();
  census->add_option("--q", ca.qs, "comma-separated field sizes");
  census->add_flag("--b-orbits", ca.b_orbits, "B-orbit sizes and sphericity verdicts");
  census->add_flag("--cells", ca.cells, "Bruhat cell histograms");
  census->add_flag("--outer", ca.outer, "involutions in the outer coset of O(2n)");
  census->add_option("--class", ca.classes, "restrict B-orbit and cell work to these labels");
  census->add_option("--memory-limit", ca.memory_limit, "e.g. 512MiB");
  census->add_option("--jobs", ca.jobs);
  census->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));

  std::string element, file;
  auto* bruhat = app.add_subcommand("bruhat", "Bruhat cell of a serialized element");
  bruhat->add_option("element", element, "serialized element; lines may be joined by ';'");
  bruhat->add_option("--file", file, "read the element from a file ('-' for stdin)");
  bruhat->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> argv_store{"sphc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sphc: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const Config cfg = config_from_environment();
    apply_config(cfg);
    const bool format_given = !format.empty();
    if (!format_given) format = cfg.format;
    if (*tables) return cmd_tables(ta, format, out);
    if (*verify) return cmd_verify(va, cfg, format, out);
    if (*census) return cmd_census(ca, cfg, format, out);
    if (*bruhat) {
      if (format == "csv") throw Error("bruhat has no csv output");
      return cmd_bruhat(element, file, format_given ? format : "text", out);
    }
  } catch (const ResourceError& e) {
    err << "sphc: resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "sphc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalError& e) {
    err << "sphc: internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

} // namespace sphc
