#include "koszulkit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <json.hpp>
#include <sstream>

#include "koszulkit/appendix.hpp"
#include "koszulkit/classify.hpp"
#include "koszulkit/generate.hpp"
#include "koszulkit/hilbert.hpp"
#include "koszulkit/quotient.hpp"
#include "koszulkit/resolution.hpp"

#ifndef KOSZULKIT_MANIFEST
#define KOSZULKIT_MANIFEST "repro_manifest.json"
#endif

namespace koszulkit {

using json = nlohmann::ordered_json;

std::string default_manifest_path() { return KOSZULKIT_MANIFEST; }

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// one "ideal:" line of an input file
struct Source {
  std::string text;  // with the prefix blanked so columns match the file
  int line = 1;
};

struct Input {
  RingPtr ring;
  std::vector<Ideal> ideals;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

Input load_input(const std::string& ring_decl, const std::string& ideal_arg) {
  Input in;
  std::vector<Source> sources;
  std::string file_ring;
  int file_ring_line = 1;
  if (!ideal_arg.empty() && std::filesystem::is_regular_file(ideal_arg)) {
    std::ifstream f(ideal_arg);
    if (!f) throw UsageError("cannot read " + ideal_arg);
    std::string line;
    for (int n = 1; std::getline(f, line); ++n) {
      std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      if (t.rfind("ring", 0) == 0) {
        file_ring = line;
        file_ring_line = n;
      } else if (t.rfind("ideal:", 0) == 0) {
        std::string blanked = line;
        auto p = blanked.find("ideal:");
        for (std::size_t i = 0; i < p + 6; ++i) blanked[i] = ' ';
        sources.push_back({blanked, n});
      } else {
        throw ParseError("expected a 'ring' or 'ideal:' line", n, 1);
      }
    }
    if (sources.empty()) throw UsageError(ideal_arg + ": no 'ideal:' line");
  } else if (!ideal_arg.empty()) {
    if (ideal_arg.find('/') != std::string::npos || std::filesystem::path(ideal_arg).has_extension())
      throw UsageError("cannot read " + ideal_arg);
    std::string t = ideal_arg;
    auto p = t.find("ideal:");
    if (p != std::string::npos)
      for (std::size_t i = 0; i < p + 6; ++i) t[i] = ' ';
    sources.push_back({t, 1});
  } else {
    throw UsageError("no ideal given (--ideal <file or polynomials>)");
  }
  if (!ring_decl.empty()) {
    in.ring = parse_ring(trim(ring_decl).rfind("ring", 0) == 0 ? ring_decl : "ring " + ring_decl);
  } else if (!file_ring.empty()) {
    std::string decl = file_ring;
    in.ring = parse_ring(decl, file_ring_line);
  } else {
    throw UsageError("no ring declaration (--ring or a 'ring' line in the ideal file)");
  }
  for (auto& s : sources) in.ideals.push_back(Ideal::parse(in.ring, s.text, s.line));
  return in;
}

// kind is degrevlex or deglex; list names variables from largest down, and may
// also be given as kind:v1,v2,...
MonomialOrder parse_order(const std::string& spec, std::string list, const RingPtr& r) {
  std::string kind = spec;
  if (auto p = spec.find(':'); p != std::string::npos) {
    kind = spec.substr(0, p);
    if (!list.empty()) throw UsageError("order: variable list given twice");
    list = spec.substr(p + 1);
  }
  std::vector<int> perm;
  std::stringstream ss(list);
  for (std::string name; std::getline(ss, name, ',');) {
    name = trim(name);
    if (name.empty()) continue;
    int i = r->index_of(name);
    if (i < 0) throw UsageError("order: unknown variable " + name);
    if (std::find(perm.begin(), perm.end(), i) != perm.end()) throw UsageError("order: repeated variable " + name);
    perm.push_back(i);
  }
  for (int i = 0; i < r->nvars(); ++i)
    if (std::find(perm.begin(), perm.end(), i) == perm.end()) perm.push_back(i);
  if (kind == "degrevlex" || kind == "grevlex") return MonomialOrder::degrevlex(perm);
  if (kind == "deglex") return MonomialOrder::deglex(perm);
  throw UsageError("order: expected degrevlex or deglex, got " + kind);
}

json strings(const std::vector<Polynomial>& ps) {
  json a = json::array();
  for (auto& p : ps) a.push_back(p.to_string());
  return a;
}

json betti_json(const BettiTable& b) {
  json j;
  j["rows"] = b.rows();
  json e = json::array();
  for (auto& [k, v] : b.entries()) e.push_back({k.first, k.second, v});
  j["entries"] = e;
  return j;
}

json header(const std::string& command) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

std::string ipoly_text(const IntPoly& p) { return ipoly_to_string(p); }

// ------------------------------------------------------------- commands

struct Emit {
  std::ostream& out;
  bool as_json = false;
  std::string json_path;

  void operator()(const json& j, const std::string& text) const {
    if (as_json)
      out << j.dump(2) << "\n";
    else
      out << text;
    if (!json_path.empty()) {
      std::ofstream f(json_path);
      if (!f) throw UsageError("cannot write " + json_path);
      f << j.dump(2) << "\n";
    }
  }
};

int cmd_gb(const Input& in, const std::string& order, const std::string& perm_list, const Emit& emit) {
  const Ideal& I = in.ideals.at(0);
  MonomialOrder ord = parse_order(order, perm_list, in.ring);
  GroebnerBasis G = buchberger(I, ord);
  json j = header("gb");
  j["ring"] = in.ring->declaration();
  j["order"] = ord.name();
  json perm = json::array();
  for (int i : ord.perm) perm.push_back(in.ring->names[i]);
  j["variables"] = perm;
  j["basis"] = strings(G.elems);
  j["size"] = G.elems.size();
  j["quadratic"] = is_quadratic_gb(G);
  j["spairs_reduce_to_zero"] = verify_gb(G);
  std::ostringstream t;
  t << "Groebner basis (" << ord.name() << ", " << G.elems.size() << " elements):\n";
  for (auto& g : G.elems) t << "  " << g.to_string() << "\n";
  t << "quadratic: " << (j["quadratic"].get<bool>() ? "yes" : "no") << "\n";
  emit(j, t.str());
  return kExitOk;
}

int cmd_hilbert(const Input& in, int upto, const Emit& emit) {
  HilbertData h = hilbert_of_quotient(in.ideals.at(0));
  json j = header("hilbert");
  j["kpoly"] = h.kpoly;
  j["numerator"] = h.numerator;
  j["dim"] = h.dim;
  j["codim"] = h.codim;
  j["e"] = h.e;
  j["function"] = h.function(upto);
  std::ostringstream t;
  t << "H(t) = (" << ipoly_text(h.numerator) << ") / (1-t)^" << h.dim << "\n";
  t << "dim " << h.dim << ", codim " << h.codim << ", e " << h.e << "\n";
  t << "values:";
  for (auto v : h.function(upto)) t << " " << v;
  t << "\n";
  emit(j, t.str());
  return kExitOk;
}

int cmd_res(const Input& in, int max_hom, bool matrices, const Emit& emit) {
  const Ideal& I = in.ideals.at(0);
  Resolution R = minimal_resolution(I, max_hom < 0 ? in.ring->nvars() : max_hom);
  json j = header("res");
  j["betti"] = betti_json(R.betti);
  json ranks = json::array();
  for (auto& m : R.complex.modules) ranks.push_back(m.rank());
  j["ranks"] = ranks;
  j["complex"] = R.complex.is_complex();
  j["euler_matches_hilbert"] = R.betti.alternating_sum() == hilbert_of_quotient(I).kpoly;
  std::string text = R.betti.to_string();
  if (matrices) {
    json ms = json::array();
    for (int i = 1; i <= R.complex.length(); ++i) {
      const PolyMatrix& d = R.complex.d(i);
      json m = json::array();
      for (auto& row : d.entries) m.push_back(strings(row));
      ms.push_back(m);
      text += "d" + std::to_string(i) + ": " + d.source.to_string() + " -> " + d.target.to_string() + "\n" +
              d.to_string() + "\n";
    }
    j["matrices"] = ms;
  }
  emit(j, text);
  return kExitOk;
}

int cmd_koszul(const Input& in, int bound, const std::string& module, const Emit& emit) {
  QuotientRing Q(in.ideals.at(0));
  json j = header("koszul");
  j["bound"] = bound;
  std::ostringstream t;
  if (module.empty()) {
    KoszulVerdict v = is_koszul_up_to(Q, bound);
    j["module"] = "k";
    j["verdict"] = v.to_string();
    j["linear_so_far"] = v.linear_so_far;
    if (!v.linear_so_far) j["position"] = {v.i, v.j};
    j["betti"] = betti_json(v.resolution.betti());
    if (v.linear_so_far) j["froberg"] = froberg_consistency(Q, v, bound).holds;
    t << v.to_string() << "\n" << v.resolution.betti().to_string();
  } else {
    Ideal U = Ideal::parse(in.ring, module);
    TruncatedResolution T = resolve_over_quotient(Q, cyclic_module(Q, U), bound, bound + 1);
    auto nl = first_nonlinear(T.betti());
    j["module"] = "R/(" + module + ")";
    j["verdict"] = nl ? "nonlinear-at(" + std::to_string(nl->first) + "," + std::to_string(nl->second) + ")"
                      : std::string("linear-so-far");
    j["linear_so_far"] = !nl.has_value();
    if (nl) j["position"] = {nl->first, nl->second};
    j["betti"] = betti_json(T.betti());
    t << j["verdict"].get<std::string>() << "\n" << T.betti().to_string();
  }
  emit(j, t.str());
  return kExitOk;
}

json report_json(const ClassificationReport& r) {
  json j;
  j["ring"] = r.input.ring->declaration();
  j["ideal"] = strings(r.input.gens);
  j["g"] = r.g;
  j["hgt"] = r.hgt;
  j["e"] = r.e;
  j["betti"] = betti_json(r.betti);
  j["matched_case"] = r.matched_case;
  j["form"] = r.form ? json(template_text(*r.form)) : json(nullptr);
  json w = json::object();
  for (auto& x : r.witnesses) w[x.name] = x.value.to_string();
  j["witnesses"] = w;
  j["checks"] = r.checks;
  j["verdict"] = to_string(r.verdict);
  json c;
  c["kind"] = r.certificate.kind;
  if (r.certificate.lg) {
    const LGCertificate& lg = *r.certificate.lg;
    json l;
    l["lift_ring"] = lg.lift_ring->declaration();
    l["order"] = lg.order.name();
    json perm = json::array();
    for (int i : lg.order.perm) perm.push_back(lg.lift_ring->names[i]);
    l["variables"] = perm;
    l["generic"] = strings(lg.generic.gens);
    l["groebner_basis"] = strings(lg.gb.elems);
    l["specializing"] = strings(lg.specializing);
    l["quadratic"] = lg.quadratic;
    l["regular"] = lg.regular;
    l["specializes"] = lg.specializes;
    c["lg"] = l;
  }
  if (!r.certificate.syzygy_witnesses.empty()) {
    json s = json::array();
    for (auto& v : r.certificate.syzygy_witnesses) s.push_back(strings(v));
    c["syzygy_witnesses"] = s;
  }
  if (r.certificate.tor_position) c["tor_position"] = {r.certificate.tor_position->first, r.certificate.tor_position->second};
  c["text"] = r.certificate.text;
  j["certificate"] = c;
  j["note"] = r.note;
  return j;
}

int cmd_classify(const Input& in, const ClassifyOptions& opt, const Emit& emit, std::ostream& err) {
  const std::size_t n = in.ideals.size();
  std::vector<json> js(n);
  std::vector<std::string> texts(n), errors(n);
  auto job = [&](std::size_t i) {
    try {
      auto r = classify(in.ideals[i], opt);
      js[i] = report_json(r);
      texts[i] = r.to_string();
    } catch (const ClassificationError& e) {
      errors[i] = e.what();
    }
  };
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(configured_threads()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> fs;
    for (std::size_t w = 0; w < workers; ++w)
      fs.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next++) < n;) job(i);
      }));
    for (auto& f : fs) f.get();
  }
  int status = kExitOk;
  json j = header("classify");
  std::string text;
  if (n == 1) {
    if (!errors[0].empty()) {
      err << "classify: " << errors[0] << "\n";
      return kExitComputation;
    }
    for (auto& [k, v] : js[0].items()) j[k] = v;
    text = texts[0];
  } else {
    json results = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      if (!errors[i].empty()) {
        err << "classify: ideal " << i + 1 << ": " << errors[i] << "\n";
        results.push_back({{"error", errors[i]}});
        text += "error: " + errors[i] + "\n";
        status = kExitComputation;
      } else {
        results.push_back(js[i]);
        text += texts[i];
      }
      text += "----\n";
    }
    j["results"] = results;
  }
  emit(j, text);
  return status;
}

int cmd_gq(const Input& in, const GQSearchOptions& opt, const Emit& emit) {
  auto res = g_quadratic_search(in.ideals.at(0), opt);
  json j = header("gq-search");
  j["found"] = res.witness.has_value();
  j["trials_run"] = res.trials_run;
  j["field"] = res.field;
  j["message"] = res.message;
  std::ostringstream t;
  if (res.witness) {
    const auto& w = *res.witness;
    j["trial"] = w.trial;
    j["order"] = w.order.name();
    json perm = json::array();
    for (int i : w.order.perm) perm.push_back(in.ring->names[i]);
    j["variables"] = perm;
    json m = json::array();
    for (auto& row : w.change.matrix()) {
      json rr = json::array();
      for (auto& e : row) rr.push_back(e.to_string());
      m.push_back(rr);
    }
    j["change"] = m;
    j["basis"] = strings(w.basis.elems);
    t << "quadratic Groebner basis found at trial " << w.trial << " (" << w.order.name() << ")\n";
    for (auto& g : w.basis.elems) t << "  " << g.to_string() << "\n";
  } else {
    t << "no quadratic Groebner basis found in " << res.trials_run << " trials over " << res.field;
    if (!res.message.empty()) t << ": " << res.message;
    t << "\n";
  }
  emit(j, t.str());
  return kExitOk;
}

Field field_of_char(const std::string& c) {
  if (c == "0" || c == "QQ") return Field::rationals();
  if (!c.empty() && std::all_of(c.begin(), c.end(), ::isdigit)) return Field::prime(static_cast<std::uint32_t>(std::stoul(c)));
  return Field::parse(c);
}

int cmd_appendix(const std::string& ch, const Emit& emit) {
  Field f = field_of_char(ch);
  auto rep = run_appendix(f);
  json j = header("appendix");
  j["field"] = rep.field;
  j["pass"] = rep.pass;
  j["basis"] = rep.basis_ok;
  j["differentials"] = rep.differentials.ok;
  j["d4_complete"] = rep.differentials.d4_complete;
  if (rep.differentials.d4_gap) j["d4_gap"] = {rep.differentials.d4_gap->a, rep.differentials.d4_gap->b};
  if (rep.obstruction) {
    const auto& o = *rep.obstruction;
    j["obstruction"] = {{"hom", o.hom}, {"bidegree", {o.bidegree.a, o.bidegree.b}}, {"total", o.total}, {"ranks", o.ranks}};
  } else {
    j["obstruction"] = nullptr;
  }
  j["obstruction_expected"] = rep.obstruction_expected;
  emit(j, rep.to_string());
  return rep.pass ? kExitOk : kExitCheckFailed;
}

int cmd_gen(const std::string& form, std::uint64_t seed, const std::string& field, int vars, const std::string& out_file,
            const Emit& emit) {
  Field f = Field::parse(field);
  GeneratedIdeal g;
  if (vars > 0) {
    std::vector<std::string> names;
    for (int i = 1; i <= vars; ++i) names.push_back("x" + std::to_string(i));
    g = generate_form(form, make_ring(f, names), seed);
  } else {
    g = generate_form(form, f, seed);
  }
  std::string file = g.ideal.ring->declaration() + "\nideal: ";
  for (std::size_t i = 0; i < g.ideal.gens.size(); ++i) file += (i ? ", " : "") + g.ideal.gens[i].to_string();
  file += "\n";
  json j = header("gen");
  j["form"] = g.form;
  j["template"] = template_text(g.t);
  j["seed"] = seed;
  j["ring"] = g.ideal.ring->declaration();
  j["ideal"] = strings(g.ideal.gens);
  json w = json::object();
  for (auto& x : g.witnesses) w[x.name] = x.value.to_string();
  j["witnesses"] = w;
  j["attempts"] = g.attempts;
  std::ostringstream t;
  if (!out_file.empty()) {
    std::ofstream o(out_file);
    if (!o) throw UsageError("cannot write " + out_file);
    o << file;
  } else {
    t << file;
  }
  t << "# form " << g.form << ": " << template_text(g.t) << "\n";
  for (auto& x : g.witnesses) t << "# " << x.name << " = " << x.value.to_string() << "\n";
  emit(j, t.str());
  return kExitOk;
}

// expected is contained in actual: objects by key, arrays elementwise
bool subset(const json& expected, const json& actual, std::string& where) {
  if (expected.is_object()) {
    if (!actual.is_object()) return false;
    for (auto& [k, v] : expected.items()) {
      if (!actual.contains(k)) {
        where = k + " missing";
        return false;
      }
      if (!subset(v, actual[k], where)) {
        where = k + (where.empty() ? "" : "." + where);
        return false;
      }
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!subset(expected[i], actual[i], where)) {
        where = "[" + std::to_string(i) + "]" + where;
        return false;
      }
    return true;
  }
  return expected == actual;
}

int cmd_repro(const std::string& path, const Emit& emit) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read manifest " + path);
  json manifest;
  try {
    manifest = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("manifest: ") + e.what());
  }
  json j = header("repro-paper");
  json results = json::array();
  std::ostringstream t;
  bool all = true;
  for (auto& check : manifest.at("checks")) {
    std::vector<std::string> args = check.at("args").get<std::vector<std::string>>();
    args.push_back("--format");
    args.push_back("json");
    std::ostringstream o, e;
    int code = run_cli(args, o, e);
    int want_code = check.value("exit", 0);
    bool ok = code == want_code;
    std::string where;
    if (ok && check.contains("expect")) {
      try {
        ok = subset(check["expect"], json::parse(o.str()), where);
      } catch (const json::parse_error&) {
        ok = false;
        where = "output is not JSON";
      }
    }
    if (ok && check.contains("stderr_contains"))
      ok = e.str().find(check["stderr_contains"].get<std::string>()) != std::string::npos;
    if (!ok && where.empty()) where = "exit " + std::to_string(code) + (e.str().empty() ? "" : ": " + trim(e.str()));
    all = all && ok;
    results.push_back({{"name", check.at("name")}, {"pass", ok}, {"detail", where}});
    t << (ok ? "PASS " : "FAIL ") << check.at("name").get<std::string>();
    if (!ok) t << " (" << where << ")";
    t << "\n";
  }
  j["checks"] = results;
  j["pass"] = all;
  t << (all ? "all checks passed" : "some checks failed") << "\n";
  emit(j, t.str());
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"koszulkit: Groebner bases, resolutions and Koszul tests for quadratic ideals"};
  app.require_subcommand(1);
  std::string ring, ideal, order = "degrevlex", perm_list, json_path, format = "text", module, form, field = "F32003", manifest,
                           ch;
  bool matrices = false;
  int upto = 10, max_hom = -1, bound = 4, vars = 0, trials = 20, perms = 50, threads = 0;
  std::uint64_t seed = 0;
  std::string out_file;

  auto input_opts = [&](CLI::App* c) {
    c->add_option("--ring", ring, "ring declaration, e.g. \"ring QQ [x,y,z]\"");
    c->add_option("--ideal", ideal, "ideal file (ring line + 'ideal:' line) or comma-separated polynomials");
    c->add_option("--json", json_path, "also write the structured record to this file");
    c->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  };
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis");
  input_opts(gb);
  gb->add_option("--order", order, "degrevlex | deglex");
  gb->add_option("--perm", perm_list, "variables from largest to smallest, e.g. z,w,x,y (unlisted ones follow)");
  auto* hil = app.add_subcommand("hilbert", "Hilbert series of S/I");
  input_opts(hil);
  hil->add_option("--upto", upto, "values of the Hilbert function up to this degree");
  auto* res = app.add_subcommand("res", "minimal free resolution of S/I");
  input_opts(res);
  res->add_option("--maxdeg", max_hom, "homological bound (default: number of variables)");
  res->add_flag("--matrices", matrices, "print the differentials");
  auto* kos = app.add_subcommand("koszul", "resolve k (or R/(module)) over R = S/I");
  input_opts(kos);
  kos->add_option("--bound", bound, "homological bound");
  kos->add_option("--module", module, "generators U; resolves R/U instead of k");
  auto* cls = app.add_subcommand("classify", "structure form and Koszul verdict for up to four quadrics");
  input_opts(cls);
  cls->add_option("--bound", bound, "also resolve k up to this degree when no certificate applies")->default_val(0);
  cls->add_option("--seed", seed, "seed for the randomized steps");
  auto* gq = app.add_subcommand("gq-search", "search for a quadratic Groebner basis after coordinate changes");
  input_opts(gq);
  gq->add_option("--trials", trials, "random coordinate changes");
  gq->add_option("--permutations", perms, "variable orders per change");
  gq->add_option("--seed", seed, "seed");
  gq->add_option("--threads", threads, "workers (default: KOSZULKIT_THREADS or 1)");
  auto* apx = app.add_subcommand("appendix", "bigraded model ring: basis, differentials, obstruction");
  apx->add_option("--char", ch, "characteristic: 0, 2, 3, ... or a field name")->required();
  apx->add_option("--json", json_path, "also write the structured record to this file");
  apx->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  auto* rep = app.add_subcommand("repro-paper", "run every check of the reproduction manifest");
  rep->add_option("--manifest", manifest, "manifest file")->default_val(default_manifest_path());
  rep->add_option("--json", json_path, "also write the structured record to this file");
  rep->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  auto* gen = app.add_subcommand("gen", "random ideal of a given structure form");
  gen->add_option("--form", form, "case name")->required()->check(CLI::IsMember(generator_forms()));
  gen->add_option("--seed", seed, "seed");
  gen->add_option("--field", field, "coefficient field");
  gen->add_option("--vars", vars, "number of variables (default depends on the form)");
  gen->add_option("--out", out_file, "write the ideal file here");
  gen->add_option("--json", json_path, "also write the structured record to this file");
  gen->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  Emit emit{out, format == "json", json_path};
  CLI::App* sub = app.get_subcommands().at(0);
  const std::string name = sub->get_name();
  try {
    if (name == "appendix") return cmd_appendix(ch, emit);
    if (name == "repro-paper") return cmd_repro(manifest, emit);
    if (name == "gen") return cmd_gen(form, seed, field, vars, out_file, emit);
    Input in = load_input(ring, ideal);
    if (name != "classify" && in.ideals.size() != 1) throw UsageError(name + " takes a single ideal");
    if (name == "gb") return cmd_gb(in, order, perm_list, emit);
    if (name == "hilbert") return cmd_hilbert(in, upto, emit);
    if (name == "res") return cmd_res(in, max_hom, matrices, emit);
    if (name == "koszul") return cmd_koszul(in, bound, module, emit);
    if (name == "classify") return cmd_classify(in, ClassifyOptions{bound, seed}, emit, err);
    if (name == "gq-search") return cmd_gq(in, GQSearchOptions{trials, perms, seed, threads}, emit);
  } catch (const ParseError& e) {
    err << name << ": parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << name << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const ClassificationError& e) {
    err << name << ": " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitUsage;
}

}  // namespace koszulkit
