#include "regma/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "regma/cubicgen.hpp"
#include "regma/error.hpp"
#include "regma/involutions.hpp"
#include "regma/matroid.hpp"
#include "regma/optimize.hpp"
#include "regma/surface.hpp"

namespace regma {

namespace {

using json = nlohmann::json;

// Bad input rather than a failed computation.
struct UsageError : Error {
  using Error::Error;
};

json rats(const std::vector<Rat>& v) {
  json a = json::array();
  for (const Rat& x : v) a.push_back(to_string(x));
  return a;
}

std::vector<Rat> rats_from(const json& a) {
  std::vector<Rat> v;
  for (const auto& x : a) v.push_back(parse_rat(x.get<std::string>()));
  return v;
}

json graph_json(const MultiGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.n()}, {"edges", edges}};
}

MultiGraph graph_from(const json& j) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return MultiGraph(j.at("n").get<int>(), edges);
}

std::string bits(uint64_t v, int d) {
  std::string s;
  for (int i = 0; i < d; ++i) s += (v >> i) & 1 ? '1' : '0';
  return s;
}

uint64_t bits_from(const std::string& s) {
  uint64_t v = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw ParseError("bad bitstring '" + s + "'");
    if (s[i] == '1') v |= uint64_t{1} << i;
  }
  return v;
}

std::string matroid_text(const BinaryMatroid& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

BinaryMatroid matroid_from_text(const std::string& s) {
  std::istringstream in(s);
  return parse_matroid(in);
}

std::vector<Rat> read_rats(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return parse_weights(in, n);
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << j.dump(2) << '\n';
}

json cycle_ids(const Cycle& c) { return c.edge_ids; }

// ---- commands ----

int cmd_systole(const std::string& source, const std::string& weights, const std::string& cert_path, std::ostream& out,
                std::ostream& err) {
  MultiGraph g = load_graph(source);
  json j{{"command", "systole"}, {"graph", source}};
  if (!weights.empty()) {
    auto [value, cycle] = systole_weighted(g, read_rats(weights, g.m()));
    j["value"] = to_string(value);
    j["cycle"] = cycle_ids(cycle);
    j["status"] = "ok";
    err << "sys(G, w) = " << to_string(value) << '\n';
    emit(j, "", out);
    return 0;
  }
  SystoleResult r = systole(g);
  std::string why;
  bool ok = verify_systole(g, r, &why);
  json dual = json::array();
  for (const auto& [c, y] : r.dual_dist) dual.push_back({{"cycle", cycle_ids(c)}, {"mass", to_string(y)}});
  json tight = json::array();
  for (const Cycle& c : r.tight_cycles) tight.push_back(cycle_ids(c));
  j["value"] = to_string(r.value);
  j["weights"] = rats(r.weights);
  j["rounds"] = r.rounds;
  j["status"] = ok ? "ok" : "fail";
  if (!ok) j["reason"] = why;
  if (!cert_path.empty()) {
    json cert{{"kind", "systole"}, {"graph", graph_json(g)},   {"value", to_string(r.value)},
              {"weights", rats(r.weights)}, {"tight_cycles", tight}, {"dual", dual}};
    emit(cert, cert_path, out);
  }
  err << "sys(G) = " << to_string(r.value) << " after " << r.rounds << " LP rounds" << (ok ? "" : ", check FAILED: " + why)
      << '\n';
  emit(j, "", out);
  return ok ? 0 : 1;
}

json cogirth_cert(const BinaryMatroid& m, const CogirthResult& r) {
  json dual = json::array();
  for (const auto& [v, y] : r.dual_dist) dual.push_back({{"vector", bits(v, m.rank())}, {"mass", to_string(y)}});
  return {{"kind", "cogirth"}, {"matroid", matroid_text(m)}, {"value", to_string(r.value)},
          {"weights", rats(r.weights)}, {"witness", bits(r.witness, m.rank())}, {"dual", dual}};
}

int cmd_cogirth(const std::string& expr, const std::string& cert_path, std::ostream& out, std::ostream& err) {
  BinaryMatroid m = build_matroid(expr);
  CogirthResult r = cogirth(m);
  std::string why;
  bool ok = verify_cogirth(m, r, &why);
  json j{{"command", "cogirth"}, {"matroid", expr},          {"rank", m.rank()},
         {"value", to_string(r.value)}, {"weights", rats(r.weights)}, {"witness", bits(r.witness, m.rank())},
         {"rounds", r.rounds}, {"status", ok ? "ok" : "fail"}};
  if (!ok) j["reason"] = why;
  if (!cert_path.empty()) emit(cogirth_cert(m, r), cert_path, out);
  err << "c(M) = " << to_string(r.value) << " for rank " << m.rank() << (ok ? "" : ", check FAILED: " + why) << '\n';
  emit(j, "", out);
  return ok ? 0 : 1;
}

int cmd_c_rep(const std::string& expr, const std::string& mult_path, std::ostream& out, std::ostream& err) {
  BinaryMatroid m = build_matroid(expr);
  if (!m.lift()) throw UsageError("c-rep: the matroid has no integer lift");
  std::vector<Rat> mult = mult_path.empty() ? std::vector<Rat>(m.size(), Rat(1)) : read_rats(mult_path, m.size());
  WeightedRep rep = weighted(*m.lift(), mult);
  auto [value, v] = c_of_rep(rep);
  json j{{"command", "c-rep"}, {"matroid", expr},         {"value", to_string(value)},
         {"witness", bits(v, m.rank())}, {"mult", rats(rep.mult)}, {"status", "ok"}};
  err << "c(H, mult) = " << to_string(value) << '\n';
  emit(j, "", out);
  return 0;
}

int cmd_verify_tables(const VerifyOptions& opt, const std::string& out_path, std::ostream& out, std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  std::vector<TableCheck> rows = verify_tables(opt);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json items = json::array();
  bool all_ok = true;
  for (const TableCheck& t : rows) {
    json it{{t.table == 's' ? "b" : "d", t.index},
            {"table", std::string(1, t.table)},
            {"expected", to_string(t.expected)},
            {"computed", to_string(t.computed)},
            {"witness", t.witness},
            {"method", t.method},
            {"status", t.ok ? "ok" : "fail"}};
    if (t.method == "exhaustive") {
      it["candidates"] = t.candidates;
      it["argmax"] = t.argmax;
    }
    items.push_back(it);
    all_ok = all_ok && t.ok;
    err << t.table << '(' << t.index << ") expected " << to_string(t.expected) << " computed " << to_string(t.computed)
        << " [" << t.method << (t.method == "exhaustive" ? ", " + std::to_string(t.candidates) + " graphs" : "") << "] "
        << (t.ok ? "ok" : "FAIL") << '\n';
  }
  err << rows.size() << " rows in " << secs << " s\n";
  json j{{"command", "verify-tables"},
         {"max_b", opt.max_b},
         {"max_d", opt.max_d},
         {"exhaustive", opt.exhaustive},
         {"items", items},
         {"status", all_ok ? "ok" : "fail"}};
  emit(j, out_path, out);
  return all_ok ? 0 : 1;
}

int cmd_gen_cubic(int n, int girth, bool three, std::ostream& out, std::ostream& err) {
  long count = 0;
  generate_cubic(n, girth, three, [&](const MultiGraph& g) {
    if (count) out << '\n';
    out << g;
    ++count;
    return true;
  });
  err << count << " graphs\n";
  return 0;
}

int cmd_involutions(const std::string& expr, const std::string& mult_path, const std::string& out_path,
                    std::ostream& out, std::ostream& err) {
  BinaryMatroid m = build_matroid(expr);
  InvolutionSet s = six_involutions(m);
  BinaryMatroid padded = pad_to_rank6(m);
  json vs = json::array();
  for (uint64_t v : s.vs) vs.push_back(bits(v, 6));
  json cert{{"kind", "involutions"}, {"matroid", matroid_text(padded)}, {"vectors", vs},
            {"counts", s.counts},     {"method", s.method},               {"status", "ok"}};
  bool ok = std::all_of(s.counts.begin(), s.counts.end(), [](int c) { return c >= 4; });
  if (!mult_path.empty()) {
    InvolutionCheck c = verify_involutions(m, read_rats(mult_path, m.size()), s);
    cert["check"] = {{"ok", c.ok}, {"total_codim", to_string(c.total_codim)}, {"bound", to_string(c.bound)}};
    ok = ok && c.ok;
    err << "sum of codimensions " << to_string(c.total_codim) << " <= " << to_string(c.bound) << '\n';
  }
  cert["status"] = ok ? "ok" : "fail";
  err << "six involutions by " << s.method << ", minimum kernel count "
      << *std::min_element(s.counts.begin(), s.counts.end()) << '\n';
  emit(cert, out_path, out);
  return ok ? 0 : 1;
}

json embedding_json(const MultiGraph& g, const EmbeddingCertificate& c) {
  return {{"kind", "embedding"}, {"graph", graph_json(g)},         {"chi", c.chi},
          {"orientable", c.orientable}, {"rotation", c.rotation.rot}, {"signs", c.rotation.sign},
          {"faces", c.faces}};
}

int cmd_embed(const std::string& source, int chi, bool orientable, bool nonorientable, const std::string& face,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (orientable && nonorientable) throw UsageError("embed: --orientable and --nonorientable exclude each other");
  MultiGraph g = load_graph(source);
  SurfaceKind kind = orientable ? SurfaceKind::orientable : nonorientable ? SurfaceKind::nonorientable : SurfaceKind::any;
  std::optional<EmbeddingCertificate> c;
  std::optional<Cycle> pinned;
  if (!face.empty()) {
    std::vector<int> verts;
    std::stringstream ss(face);
    std::string tok;
    while (std::getline(ss, tok, ',')) verts.push_back(std::stoi(tok));
    pinned = cycle_from_vertices(g, verts);
    c = embeds_with_face(g, chi, kind, *pinned);
  } else {
    c = embeds_in(g, chi, kind);
  }
  if (!c) {
    json j{{"kind", "embedding"}, {"graph", graph_json(g)}, {"chi", chi}, {"found", false}, {"status", "fail"}};
    err << "no embedding with Euler characteristic >= " << chi << '\n';
    emit(j, out_path, out);
    return 1;
  }
  std::string why;
  bool ok = verify_certificate(g, *c, &why);
  json j = embedding_json(g, *c);
  j["found"] = true;
  if (pinned) j["pinned_face"] = cycle_ids(*pinned);
  j["status"] = ok ? "ok" : "fail";
  err << "embedding found: chi " << c->chi << (c->orientable ? ", orientable, " : ", nonorientable, ")
      << c->faces.size() << " faces" << (ok ? "" : ", check FAILED: " + why) << '\n';
  emit(j, out_path, out);
  return ok ? 0 : 1;
}

int cmd_matroid_build(const std::string& expr, const std::string& out_path, std::ostream& out, std::ostream& err) {
  BinaryMatroid m = build_matroid(expr);
  std::string text = matroid_text(m);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write '" + out_path + "'");
    f << text;
  }
  err << "rank " << m.rank() << ", " << m.size() << " elements" << (m.lift() ? ", with lift" : "")
      << (m.origin().warning.empty() ? "" : ", " + m.origin().warning) << '\n';
  return 0;
}

int cmd_reduce(const std::string& source, std::ostream& out, std::ostream& err) {
  MultiGraph g = load_graph(source);
  Reduction r = reduce_to_cubic(g);
  json trace = json::array();
  for (const ReductionStep& s : r.trace) {
    json step{{"kind", to_string(s.kind)}, {"edges", s.edges}};
    if (s.vertex >= 0) step["vertex"] = s.vertex;
    trace.push_back(step);
  }
  json j{{"command", "reduce"}, {"graph", graph_json(r.graph)}, {"trace", trace}, {"status", "ok"}};
  err << r.trace.size() << " steps, result has " << r.graph.n() << " vertices and " << r.graph.m() << " edges\n";
  emit(j, "", out);
  return 0;
}

// ---- certificate re-verification ----

bool check_certificate(const json& c, std::string* why) {
  std::string kind = c.at("kind").get<std::string>();
  if (kind == "systole") {
    MultiGraph g = graph_from(c.at("graph"));
    SystoleResult r;
    r.value = parse_rat(c.at("value").get<std::string>());
    r.weights = rats_from(c.at("weights"));
    for (const auto& t : c.at("tight_cycles")) r.tight_cycles.push_back({t.get<std::vector<int>>()});
    for (const auto& d : c.at("dual"))
      r.dual_dist[Cycle{d.at("cycle").get<std::vector<int>>()}] = parse_rat(d.at("mass").get<std::string>());
    return verify_systole(g, r, why);
  }
  if (kind == "cogirth") {
    BinaryMatroid m = matroid_from_text(c.at("matroid").get<std::string>());
    CogirthResult r;
    r.value = parse_rat(c.at("value").get<std::string>());
    r.weights = rats_from(c.at("weights"));
    r.witness = bits_from(c.at("witness").get<std::string>());
    for (const auto& d : c.at("dual"))
      r.dual_dist[bits_from(d.at("vector").get<std::string>())] = parse_rat(d.at("mass").get<std::string>());
    return verify_cogirth(m, r, why);
  }
  if (kind == "embedding") {
    MultiGraph g = graph_from(c.at("graph"));
    EmbeddingCertificate e;
    e.rotation.rot = c.at("rotation").get<std::vector<std::vector<int>>>();
    e.rotation.sign = c.at("signs").get<std::vector<int>>();
    e.faces = c.at("faces").get<FaceList>();
    e.chi = c.at("chi").get<int>();
    e.orientable = c.at("orientable").get<bool>();
    if (!verify_certificate(g, e, why)) return false;
    if (c.contains("pinned_face") && !has_face(g, e, Cycle{c.at("pinned_face").get<std::vector<int>>()})) {
      if (why) *why = "pinned face is not a face";
      return false;
    }
    return true;
  }
  if (kind == "involutions") {
    BinaryMatroid m = matroid_from_text(c.at("matroid").get<std::string>());
    std::vector<uint64_t> vs;
    for (const auto& v : c.at("vectors")) vs.push_back(bits_from(v.get<std::string>()));
    std::set<uint64_t> distinct(vs.begin(), vs.end());
    auto fail = [&](const std::string& msg) {
      if (why) *why = msg;
      return false;
    };
    if (m.rank() != 6) return fail("matroid rank is not 6");
    if (vs.size() != 6 || distinct.size() != 6 || distinct.count(0)) return fail("need six distinct nonzero vectors");
    std::vector<int> counts = kernel_counts(m, vs);
    if (counts != c.at("counts").get<std::vector<int>>()) return fail("kernel counts differ");
    if (std::any_of(counts.begin(), counts.end(), [](int x) { return x < 4; })) return fail("a kernel count is below 4");
    return true;
  }
  throw UsageError("unknown certificate kind '" + kind + "'");
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  json c;
  try {
    c = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("certificate is not JSON: ") + e.what());
  }
  std::string why;
  bool ok;
  try {
    ok = check_certificate(c, &why);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed certificate: ") + e.what());
  }
  json j{{"command", "check"}, {"kind", c.value("kind", "")}, {"status", ok ? "ok" : "fail"}};
  if (!ok) j["reason"] = why;
  err << "certificate " << (ok ? "verified" : "REJECTED: " + why) << '\n';
  emit(j, "", out);
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"regma: systoles, cogirths and regular matroids in exact arithmetic", "regma"};
  app.require_subcommand(0, 1);
  std::string check_path;
  app.add_option("--check", check_path, "Re-verify a certificate JSON file");

  std::string graph, matroid, weights, cert, mult, out_path, face;
  auto* sys = app.add_subcommand("systole", "Systole of a graph");
  sys->add_option("graph", graph, "builtin:NAME or graph file")->required();
  sys->add_option("--weights", weights, "Evaluate a fixed weighting instead");
  sys->add_option("--certificate", cert, "Write a certificate JSON file");

  auto* cog = app.add_subcommand("cogirth", "Cogirth of a binary matroid");
  cog->add_option("matroid", matroid, "Matroid expression")->required();
  cog->add_option("--certificate", cert, "Write a certificate JSON file");

  auto* crep = app.add_subcommand("c-rep", "c(H, mult) of a weighted representation");
  crep->add_option("matroid", matroid, "Matroid expression with an integer lift")->required();
  crep->add_option("--mult", mult, "Multiplicity file (default uniform)");

  VerifyOptions vopt;
  auto* vt = app.add_subcommand("verify-tables", "Check the s(b) and c(d) tables");
  vt->add_option("--max-b", vopt.max_b, "Largest b")->check(CLI::Range(1, 9));
  vt->add_option("--max-d", vopt.max_d, "Largest d")->check(CLI::Range(1, 9));
  vt->add_flag("--exhaustive", vopt.exhaustive, "Also maximize over all generated cubic graphs");
  vt->add_option("--jobs", vopt.jobs, "Worker threads for the exhaustive pass")->check(CLI::PositiveNumber);
  vt->add_option("--out", out_path, "Write the report here instead of stdout");

  int n = 0, girth = 0;
  bool three = false;
  auto* gen = app.add_subcommand("gen-cubic", "Connected cubic simple graphs up to isomorphism");
  gen->add_option("--n", n, "Vertex count")->required();
  gen->add_option("--min-girth", girth, "Minimum girth");
  gen->add_flag("--three-connected", three, "Only 3-edge-connected graphs");

  auto* inv = app.add_subcommand("involutions6", "Six involutions of a rank-6 regular matroid");
  inv->add_option("matroid", matroid, "Matroid expression")->required();
  inv->add_option("--mult", mult, "Multiplicity file to check the codimension sum");
  inv->add_option("--out", out_path, "Write the certificate here instead of stdout");

  int chi = 0;
  bool orientable = false, nonorientable = false;
  auto* emb = app.add_subcommand("embed", "Search a 2-cell embedding");
  emb->add_option("graph", graph, "builtin:NAME or graph file")->required();
  emb->add_option("--chi", chi, "Least Euler characteristic")->required();
  emb->add_flag("--orientable", orientable, "Orientable surfaces only");
  emb->add_flag("--nonorientable", nonorientable, "Nonorientable surfaces only");
  emb->add_option("--face", face, "Comma-separated vertex cycle that must bound a face");
  emb->add_option("--out", out_path, "Write the certificate here instead of stdout");

  auto* mb = app.add_subcommand("matroid-build", "Evaluate a matroid expression");
  mb->add_option("expr", matroid, "Matroid expression")->required();
  mb->add_option("--out", out_path, "Write the matroid file here instead of stdout");

  auto* red = app.add_subcommand("reduce", "Reduce a graph to a cubic one");
  red->add_option("graph", graph, "builtin:NAME or graph file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!check_path.empty()) {
      if (!app.get_subcommands().empty()) throw UsageError("--check takes no subcommand");
      return cmd_check(check_path, out, err);
    }
    if (app.got_subcommand(sys)) return cmd_systole(graph, weights, cert, out, err);
    if (app.got_subcommand(cog)) return cmd_cogirth(matroid, cert, out, err);
    if (app.got_subcommand(crep)) return cmd_c_rep(matroid, mult, out, err);
    if (app.got_subcommand(vt)) return cmd_verify_tables(vopt, out_path, out, err);
    if (app.got_subcommand(gen)) return cmd_gen_cubic(n, girth, three, out, err);
    if (app.got_subcommand(inv)) return cmd_involutions(matroid, mult, out_path, out, err);
    if (app.got_subcommand(emb)) return cmd_embed(graph, chi, orientable, nonorientable, face, out_path, out, err);
    if (app.got_subcommand(mb)) return cmd_matroid_build(matroid, out_path, out, err);
    if (app.got_subcommand(red)) return cmd_reduce(graph, out, err);
    err << app.help();
    return 2;
  } catch (const UsageError& e) {
    err << "regma: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "regma: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    err << "regma: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    err << "regma: " << e.what() << '\n';
    return 2;
  } catch (const RankError& e) {
    err << "regma: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "regma: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace regma
