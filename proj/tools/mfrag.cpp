#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mfrag/catalog.hpp"
#include "mfrag/corpus.hpp"
#include "mfrag/error.hpp"
#include "mfrag/exminor.hpp"
#include "mfrag/io.hpp"
#include "mfrag/minor_analysis.hpp"
#include "mfrag/pmatrix.hpp"
#include "mfrag/verifiers.hpp"

using nlohmann::json;
using namespace mfrag;

namespace {

json digest(const Matroid& m) {
  json j;
  j["ground"] = m.ground();
  j["rank"] = m.rank();
  j["bases"] = m.bases().size();
  return j;
}

Matroid resolve_matroid(const std::string& arg, bool validate) {
  if (std::filesystem::exists(arg)) return load_mtd(arg, validate);
  return catalog(arg);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    if (comma > pos) out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

void emit(const json& j, const std::string& format, const std::string& text_view) {
  if (format == "text")
    std::cout << text_view;
  else
    std::cout << j.dump(2) << "\n";
}

json evidence_json(const OutcomeEvidence& e) {
  json j;
  j["size_m"] = e.size_m;
  j["size_n"] = e.size_n;
  j["rank_m"] = e.rank_m;
  j["rank_n"] = e.rank_n;
  if (e.xy) j["xy"] = {e.xy->first, e.xy->second};
  if (e.basis) j["basis"] = *e.basis;
  if (e.z) j["z"] = *e.z;
  if (e.z2) j["z2"] = *e.z2;
  if (e.triad) j["triad"] = *e.triad;
  if (e.fan) j["fan"] = *e.fan;
  if (e.cocircuit) j["cocircuit"] = *e.cocircuit;
  if (e.triangle) j["triangle"] = *e.triangle;
  if (e.cocircuit_z) j["cocircuit_z"] = *e.cocircuit_z;
  if (e.robust_outside_xy >= 0) j["robust_outside_xy"] = e.robust_outside_xy;
  return j;
}

json verdict_json(const OutcomeVerdict& v, int theorem) {
  json outcomes;
  const std::vector<std::string> keys1 = {"1a", "1b_i", "1b_ii", "1b_iii"};
  const std::vector<std::string> keys2 = {"2a", "2b", "2c"};
  if (theorem == 1) {
    outcomes["1a"] = v.thm1_a;
    outcomes["1b_i"] = v.thm1_b_i;
    outcomes["1b_ii"] = v.thm1_b_ii;
    outcomes["1b_iii"] = v.thm1_b_iii;
  } else {
    outcomes["2a"] = v.thm2_a;
    outcomes["2b"] = v.thm2_b;
    outcomes["2c"] = v.thm2_c;
  }
  json j;
  j["outcomes"] = outcomes;
  json ev = json::object();
  for (const auto& [key, e] : v.evidence) {
    bool relevant = theorem == 1 ? key[0] == '1' : key[0] == '2';
    if (relevant) ev[key] = evidence_json(e);
  }
  j["evidence"] = ev;
  if (!v.instance.empty()) j["instance"] = v.instance;
  if (v.pair) j["pair"] = {v.pair->first, v.pair->second};
  return j;
}

bool verdict_satisfied(const OutcomeVerdict& v, int theorem) {
  if (theorem == 1) return v.thm1_a || v.thm1_b_i || v.thm1_b_ii || v.thm1_b_iii;
  return v.thm2_a || v.thm2_b || v.thm2_c;
}

std::string verdict_text(const OutcomeVerdict& v, int theorem) {
  std::string out = "theorem " + std::to_string(theorem) + ":";
  auto flag = [&](const char* name, bool ok) { out += std::string(" ") + name + "=" + (ok ? "yes" : "no"); };
  if (theorem == 1) {
    flag("a", v.thm1_a);
    flag("b(i)", v.thm1_b_i);
    flag("b(ii)", v.thm1_b_ii);
    flag("b(iii)", v.thm1_b_iii);
  } else {
    flag("a", v.thm2_a);
    flag("b", v.thm2_b);
    flag("c", v.thm2_c);
    if (!v.instance.empty()) out += " instance=" + v.instance;
  }
  return out + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matroid fragility and excluded-minor toolkit"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "output format: json (default) or text")
      ->check(CLI::IsMember({"json", "text"}));
  bool no_validate = false;
  app.add_flag("--no-validate", no_validate,
               "skip eager exchange-axiom and P-matrix validation of loaded files");
  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir,
                 "corpus cache directory (MFRAG_CACHE_DIR is the fallback)");

  auto* cat = app.add_subcommand("catalog", "list or show the named matroids");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "print every catalog name");
  auto* cat_show = cat->add_subcommand("show", "print one catalog matroid");
  std::string show_name;
  cat_show->add_option("name", show_name, "catalog name")->required();

  auto* analyze = app.add_subcommand("analyze", "element taxonomy of M relative to a minor N");
  std::string an_matroid, an_minor, an_basis;
  analyze->add_option("--matroid", an_matroid, "catalog name or .mtd file")->required();
  analyze->add_option("--minor", an_minor, "catalog name or .mtd file")->required();
  analyze->add_option("--basis", an_basis, "comma-separated basis for robust/strong columns");

  auto* classify = app.add_subcommand("classify", "theorem outcome check on a .ctx instance");
  std::string ctx_path;
  int theorem = 0;
  classify->add_option("--ctx", ctx_path, ".ctx instance file")->required();
  classify->add_option("--theorem", theorem, "1 or 2 (default: both)")->check(CLI::Range(1, 2));

  auto* verify = app.add_subcommand("verify", "run a lemma verifier over a corpus");
  std::string lemma_id, corpus_spec;
  int jobs = 1;
  verify->add_option("--lemma", lemma_id, "lemma id (see README)")->required();
  verify->add_option("--corpus", corpus_spec,
                     "catalog | all-gf2-upto(n) | all-gf3-upto(n) | files:a.mtd,...")
      ->required();
  verify->add_option("--jobs", jobs, "worker threads (default 1)")->check(CLI::PositiveNumber);

  auto* piv = app.add_subcommand("pivot", "pivot a .pmx matrix on an entry");
  std::string matrix_path, on_pair;
  piv->add_option("--matrix", matrix_path, ".pmx file")->required();
  piv->add_option("--on", on_pair, "x,y: row then column label")->required();

  auto* dy = app.add_subcommand("deltay", "delta-Y exchange on a triangle");
  std::string dy_matroid, dy_triangle;
  dy->add_option("--matroid", dy_matroid, "catalog name or .mtd file")->required();
  dy->add_option("--triangle", dy_triangle, "p,q,r")->required();

  auto* scan = app.add_subcommand("fragile-scan", "scan a generated corpus for fragile matroids");
  std::string scan_minor, scan_field;
  int scan_max_n = 0;
  scan->add_option("--minor", scan_minor, "catalog name of N")->required();
  scan->add_option("--field", scan_field, "GF(2) or GF(3)")->required();
  scan->add_option("--max-n", scan_max_n, "largest ground-set size (<= 9)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::optional<std::string> cache_opt;
  if (!cache_dir.empty()) cache_opt = cache_dir;

  try {
    if (cat_list->parsed()) {
      json j;
      j["command"] = "catalog list";
      j["names"] = catalog_names();
      std::string text;
      for (const auto& n : catalog_names()) text += n + "\n";
      emit(j, format, text);
      return 0;
    }

    if (cat_show->parsed()) {
      Matroid m = catalog(show_name);
      json j;
      j["command"] = "catalog show";
      j["name"] = show_name;
      j["matroid"] = digest(m);
      j["mtd"] = format_mtd(m);
      emit(j, format, format_mtd(m));
      return 0;
    }

    if (analyze->parsed()) {
      Matroid m = resolve_matroid(an_matroid, !no_validate);
      Matroid n = resolve_matroid(an_minor, !no_validate);
      std::optional<std::set<std::string>> basis;
      if (!an_basis.empty()) {
        auto parts = split_list(an_basis);
        basis = std::set<std::string>(parts.begin(), parts.end());
      }
      auto rows = classify_elements(m, n, basis);
      json elements = json::array();
      std::string text;
      for (const auto& r : rows) {
        json e;
        e["element"] = r.element;
        e["deletable"] = r.deletable;
        e["contractible"] = r.contractible;
        e["flexible"] = r.flexible;
        e["essential"] = r.essential;
        if (r.robust) e["robust"] = *r.robust;
        if (r.strong) e["strong"] = *r.strong;
        elements.push_back(e);
        text += r.element + ":";
        if (r.deletable) text += " deletable";
        if (r.contractible) text += " contractible";
        if (r.flexible) text += " flexible";
        if (r.essential) text += " essential";
        if (r.robust) text += *r.robust ? " robust" : "";
        if (r.strong) text += *r.strong ? " strong" : "";
        text += "\n";
      }
      json j;
      j["command"] = "analyze";
      j["matroid"] = digest(m);
      j["minor"] = digest(n);
      j["elements"] = elements;
      j["fragile"] = is_fragile(m, n);
      j["strictly_fragile"] = is_strictly_fragile(m, n);
      text += std::string("fragile: ") + (is_fragile(m, n) ? "yes" : "no") + "\n";
      emit(j, format, text);
      return 0;
    }

    if (classify->parsed()) {
      SetupContext ctx = load_setup(ctx_path);
      json j;
      j["command"] = "classify";
      j["ctx"] = ctx_path;
      j["matroid"] = digest(ctx.m);
      j["minor"] = digest(ctx.n);
      std::string text;
      bool all_satisfied = true;
      if (theorem != 2) {
        OutcomeVerdict v = classify_mainthm1(ctx);
        j["theorem1"] = verdict_json(v, 1);
        text += verdict_text(v, 1);
        all_satisfied = all_satisfied && verdict_satisfied(v, 1);
      }
      if (theorem != 1) {
        OutcomeVerdict v = classify_mainthm2(ctx);
        j["theorem2"] = verdict_json(v, 2);
        text += verdict_text(v, 2);
        all_satisfied = all_satisfied && verdict_satisfied(v, 2);
      }
      emit(j, format, text);
      return all_satisfied ? 0 : 1;
    }

    if (verify->parsed()) {
      auto corpus = resolve_corpus(corpus_spec, cache_opt);
      LemmaReport report = verify_lemma(lemma_id, corpus, jobs);
      json failures = json::array();
      std::string text;
      for (const auto& f : report.failures) {
        json jf;
        jf["matroid"] = f.matroid;
        jf["instance"] = f.instance;
        jf["detail"] = f.detail;
        failures.push_back(jf);
        text += "FAIL " + f.matroid + ": " + f.instance + ": " + f.detail + "\n";
      }
      json j;
      j["command"] = "verify";
      j["lemma"] = report.lemma;
      j["corpus"] = corpus_spec;
      j["matroids"] = report.matroids;
      j["instances"] = report.instances;
      j["failures"] = failures;
      j["pass"] = report.pass();
      text += (report.pass() ? "PASS " : "FAIL ") + report.lemma + ": " +
              std::to_string(report.instances) + " instances over " +
              std::to_string(report.matroids) + " matroids\n";
      emit(j, format, text);
      return report.pass() ? 0 : 1;
    }

    if (piv->parsed()) {
      PMatrix a = load_pmx(matrix_path, !no_validate);
      auto parts = split_list(on_pair);
      if (parts.size() != 2) fail("ValidationError", "--on expects two labels x,y");
      PMatrix res = pivot(a, parts[0], parts[1]);
      json j;
      j["command"] = "pivot";
      j["on"] = parts;
      j["field"] = res.field().name();
      j["pmx"] = format_pmx(res);
      emit(j, format, format_pmx(res));
      return 0;
    }

    if (dy->parsed()) {
      Matroid m = resolve_matroid(dy_matroid, !no_validate);
      auto parts = split_list(dy_triangle);
      if (parts.size() != 3) fail("ValidationError", "--triangle expects three labels p,q,r");
      Matroid res = delta_y(m, {parts.begin(), parts.end()});
      json j;
      j["command"] = "deltay";
      j["triangle"] = parts;
      j["result"] = digest(res);
      j["mtd"] = format_mtd(res);
      emit(j, format, format_mtd(res));
      return 0;
    }

    if (scan->parsed()) {
      if (scan_field.rfind("GF(", 0) != 0 || scan_field.back() != ')')
        fail("UnknownField", "--field expects GF(2) or GF(3)");
      int q = 0;
      try {
        q = std::stoi(scan_field.substr(3, scan_field.size() - 4));
      } catch (const std::exception&) {
        fail("UnknownField", "--field expects GF(2) or GF(3)");
      }
      Matroid n = resolve_matroid(scan_minor, !no_validate);
      auto corpus = corpus_all_gf_upto(q, scan_max_n, cache_opt);
      json found = json::array();
      std::string text;
      int with_minor = 0;
      for (const auto& entry : corpus) {
        if (entry.m.size() < n.size() || !has_minor(entry.m, n)) continue;
        ++with_minor;
        if (!is_strictly_fragile(entry.m, n)) continue;
        json e;
        e["name"] = entry.name;
        e["matroid"] = digest(entry.m);
        found.push_back(e);
        text += entry.name + "\n";
      }
      json j;
      j["command"] = "fragile-scan";
      j["minor"] = scan_minor;
      j["field"] = "GF(" + std::to_string(q) + ")";
      j["max_n"] = scan_max_n;
      j["matroids_scanned"] = corpus.size();
      j["with_minor"] = with_minor;
      j["strictly_fragile"] = found;
      emit(j, format, text);
      return 0;
    }
  } catch (const Error& err) {
    std::cerr << err.what() << "\n";
    return 2;
  }

  return 2;
}
