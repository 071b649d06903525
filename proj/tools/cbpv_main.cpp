// Command-line front end: type checking, evaluation, logical-relation runs,
// set/list effect simulation, term generation, and checks of finite locally
// indexed instances. Exit codes: 0 all checks pass, 1 counterexample found,
// 2 usage or configuration error (including budget exhaustion).
#include <iostream>

#include <CLI11.hpp>

#include "cbpv/config.hpp"
#include "cbpv/generate.hpp"
#include "cbpv/logrel.hpp"
#include "cbpv/lindcheck.hpp"

namespace {

using namespace cbpv;

// Corpus files: one term per line; '#' starts a comment; blank lines skipped.
std::vector<std::string> read_corpus_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

std::vector<TermPtr> parse_corpus(const std::vector<std::string>& lines,
                                  const Signature& sig) {
  std::vector<TermPtr> out;
  for (auto& l : lines) out.push_back(parse_program(l, sig));
  return out;
}

// Optional "bases"/"consts" keys in a signature file supply carriers and
// constants for the generation-backed subcommands.
struct SigBundle {
  Signature sig;
  ConstEnv cenv;
  std::map<std::string, SemSet> bases;
  std::map<std::string, SemVal> consts;
};

SigBundle load_sig_bundle(const std::string& path) {
  json j = load_json_file(path);
  SigBundle out;
  out.sig = load_signature(j);
  for (auto& [name, arr] : j.value("bases", json::object()).items())
    out.bases[name] = detail::atoms_from(arr);
  detail::load_consts(j, out.sig, out.cenv, out.consts);
  return out;
}

json report_json(const SimReport& rep) {
  json out;
  out["checked"] = rep.checked;
  out["passed"] = rep.passed();
  out["counterexamples"] = json::array();
  for (auto& e : rep.counterexamples)
    out["counterexamples"].push_back(
        {{"term", e.term}, {"type", e.type}, {"detail", e.detail}});
  return out;
}

json report_json(const LindReport& rep) {
  json out;
  out["checked"] = rep.checked;
  out["passed"] = rep.passed();
  out["violations"] = rep.violations;
  return out;
}

int emit(const SimReport& rep, bool as_json) {
  if (as_json)
    std::cout << report_json(rep).dump(2) << "\n";
  else
    std::cout << rep.str() << "\n";
  return rep.passed() ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_check(const std::string& file, const std::string& sig_path,
              bool as_json) {
  json sj = load_json_file(sig_path);
  Signature sig = load_signature(sj);
  ConstEnv cenv;
  std::map<std::string, SemVal> unused;
  detail::load_consts(sj, sig, cenv, unused);
  std::string text = load_text_file(file);
  TermPtr t = parse_program(text, sig);
  CompType bt = infer_comp(sig, Context{}, *t, cenv);
  if (as_json)
    std::cout << json{{"type", print_ctype(bt)}}.dump(2) << "\n";
  else
    std::cout << print_ctype(bt) << "\n";
  return 0;
}

int run_eval(const std::string& file, const std::string& model_path,
             const std::string& env_path, bool as_json) {
  LoadedModel lm = load_model(load_json_file(model_path));
  Env env;
  if (!env_path.empty()) env = load_env(load_json_file(env_path), lm.sig);
  std::string text = load_text_file(file);
  TermPtr t = parse_program(text, lm.sig);
  CompType bt = infer_comp(lm.sig, env.type_context(), *t, lm.cenv);
  SemVal d = eval_comp(lm.model, lm.cenv, env, *t, bt);
  if (as_json)
    std::cout << json{{"type", print_ctype(bt)}, {"value", d.str()}}.dump(2)
              << "\n";
  else
    std::cout << print_ctype(bt) << "\n" << d.str() << "\n";
  return 0;
}

int run_logrel(const std::string& glue_path, const std::string& corpus_path,
               const std::string& file, bool as_json) {
  LoadedGlue lg = load_glue(load_json_file(glue_path));
  std::vector<TermPtr> corpus;
  if (!corpus_path.empty())
    corpus = parse_corpus(read_corpus_lines(load_text_file(corpus_path)), lg.sig);
  else if (!file.empty())
    corpus.push_back(parse_program(load_text_file(file), lg.sig));
  else
    throw ConfigError("logrel needs --corpus or a term file");
  SimReport rep = check_basic_lemma(lg.glued, lg.cenv, corpus);
  return emit(rep, as_json);
}

int run_simulate(const std::string& sig_path, std::size_t count,
                 std::uint64_t seed, bool as_json) {
  SigBundle sb = load_sig_bundle(sig_path);
  if (sb.bases.empty())
    throw ConfigError(
        "simulate needs base carriers: add a \"bases\" object to the "
        "signature file");
  Model m_set = algebra_model(make_pfin_monad(), sb.sig, sb.bases, sb.consts);
  Model m_list = algebra_model(make_list_monad(), sb.sig, sb.bases, sb.consts);

  // target type F β for the first declared value base
  if (sb.sig.value_bases.empty())
    throw ConfigError("simulate needs at least one value base");
  CompType target =
      CompType::free(ValueType::mk_base(sb.sig.value_bases.front()));
  std::vector<TermPtr> corpus =
      generate_terms(sb.sig, sb.cenv, target, 4, seed, count);
  SimReport rep = check_effect_sim(m_set, m_list, sb.cenv, corpus);
  return emit(rep, as_json);
}

int run_gen(const std::string& sig_path, const std::string& type_text,
            std::size_t depth, std::size_t count, std::uint64_t seed,
            bool as_json) {
  SigBundle sb = load_sig_bundle(sig_path);
  CompType target = parse_ctype_text(type_text, sb.sig);
  std::vector<TermPtr> terms =
      generate_terms(sb.sig, sb.cenv, target, depth, seed, count);
  if (as_json) {
    json out = json::array();
    for (auto& t : terms) out.push_back(print_term(t));
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& t : terms) std::cout << print_term(t) << "\n";
  }
  return 0;
}

int run_lind_check(const std::string& path, bool as_json) {
  json j = load_json_file(path);
  std::vector<std::pair<std::string, LindReport>> reports;

  if (j.contains("functor")) {
    LoadedLindFunctor f = load_lind_functor(j["functor"]);
    reports.emplace_back("source axioms", check_lind_axioms(*f.source));
    reports.emplace_back("target axioms", check_lind_axioms(*f.target));
    reports.emplace_back("functor laws", check_lind_functor(f.functor));
    reports.emplace_back(
        "index fibration",
        check_fincat_fibration(f.source->index, f.target->index,
                               f.functor.p_obj, f.functor.p_arr));
    FibrationResult fr =
        check_fibration_property(f.functor, f.unit_source, f.unit_target);
    reports.emplace_back("lifting property", fr.report);
  } else {
    FinLInd l = load_finlind(j);
    reports.emplace_back("axioms", check_lind_axioms(l));
  }

  bool ok = true;
  if (as_json) {
    json out = json::array();
    for (auto& [name, rep] : reports) {
      json r = report_json(rep);
      r["check"] = name;
      out.push_back(r);
      ok = ok && rep.passed();
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& [name, rep] : reports) {
      std::cout << name << ": " << rep.str() << "\n";
      ok = ok && rep.passed();
    }
  }
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"call-by-push-value semantics and logical-relations workbench"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit reports as JSON");

  std::string file, sig_path, model_path, env_path, glue_path, corpus_path,
      type_text, lind_path;
  std::size_t count = 0, depth = 4;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* c_check = app.add_subcommand("check", "type-check a term file");
  c_check->add_option("file", file)->required();
  c_check->add_option("--sig", sig_path, "signature JSON")->required();

  auto* c_eval = app.add_subcommand("eval", "evaluate a term in a model");
  c_eval->add_option("file", file)->required();
  c_eval->add_option("--model", model_path, "model JSON")->required();
  c_eval->add_option("--env", env_path, "environment JSON");

  auto* c_logrel =
      app.add_subcommand("logrel", "check the basic lemma over a corpus");
  c_logrel->add_option("file", file, "single term file");
  c_logrel->add_option("--glue", glue_path, "gluing configuration JSON")
      ->required();
  c_logrel->add_option("--corpus", corpus_path, "corpus file, one term per line");

  auto* c_sim =
      app.add_subcommand("simulate", "set/list effect simulation on generated terms");
  c_sim->add_option("--sig", sig_path, "signature JSON with base carriers")
      ->required();
  c_sim->add_option("--count", count, "number of terms")->required();
  c_sim->add_option("--seed", seed, "generator seed")->required();

  auto* c_gen = app.add_subcommand("gen", "generate well-typed closed terms");
  c_gen->add_option("--sig", sig_path, "signature JSON")->required();
  c_gen->add_option("--type", type_text, "target computation type")->required();
  c_gen->add_option("--depth", depth, "maximum depth");
  c_gen->add_option("--count", count, "number of terms")->required();
  c_gen->add_option("--seed", seed, "generator seed")->required();

  auto* c_lind =
      app.add_subcommand("lind", "finite locally indexed instances");
  auto* c_lind_check =
      c_lind->add_subcommand("check", "check axioms (and, for functor files, "
                                      "the fibration lifting property)");
  c_lind_check->add_option("file", lind_path)->required();
  c_lind->require_subcommand(1);

  (void)seed_set;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_check) return run_check(file, sig_path, as_json);
    if (*c_eval) return run_eval(file, model_path, env_path, as_json);
    if (*c_logrel) return run_logrel(glue_path, corpus_path, file, as_json);
    if (*c_sim) return run_simulate(sig_path, count, seed, as_json);
    if (*c_gen) return run_gen(sig_path, type_text, depth, count, seed, as_json);
    if (*c_lind) return run_lind_check(lind_path, as_json);
  } catch (const cbpv::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const cbpv::TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
