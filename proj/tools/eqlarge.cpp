#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <eqlarge/eqlarge.hpp>

using namespace eqlarge;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

struct Options {
  std::string format = "text";
  std::vector<std::string> consts;
  std::uint64_t budget = 0;
  unsigned jobs = 1;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string decimal(const Probability& p) {
  std::ostringstream out;
  out << std::setprecision(6) << static_cast<double>(p.numerator()) / static_cast<double>(p.denominator());
  return out.str();
}

std::string show(const Probability& p) { return to_string(p) + " (~" + decimal(p) + ")"; }

Bindings parse_bindings(const Group& g, const std::vector<std::string>& consts) {
  Bindings b;
  for (const auto& c : consts) {
    const auto eq = c.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--const expects name=element, got '" + c + "'");
    const std::string name = c.substr(0, eq);
    b[name] = resolve_constant(g, c.substr(eq + 1), {});
  }
  return b;
}

std::uint64_t budget_of(const Options& o) { return o.budget ? o.budget : default_node_budget(); }

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.format == "json")
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

void require_format(const Options& o, bool csv_ok) {
  if (o.format != "text" && o.format != "json" && !(csv_ok && o.format == "csv"))
    throw UsageError("format '" + o.format + "' is not supported here");
}

/// A subset of G^arity read from --subset.
struct SubsetArg {
  std::size_t arity = 1;
  Subset bits;
};

SubsetArg parse_subset(const Group& g, const std::string& text, const Options& o) {
  if (text.rfind("solutions:", 0) == 0) {
    const SolutionSet s = solution_set(g, parse_equation(text.substr(10)), parse_bindings(g, o.consts));
    return {s.arity(), s.bits()};
  }
  json j;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw UsageError("cannot open subset file '" + text.substr(1) + "'");
    j = json::parse(in);
  } else {
    j = json::parse(text);
  }
  if (!j.is_object() || !j.contains("elements")) throw UsageError("subset JSON needs an \"elements\" array");
  const std::size_t arity = j.value("arity", std::size_t{1});
  const ProductView view = ProductView::power(g, arity);
  Subset s(view.order());
  for (const auto& e : j.at("elements")) {
    const auto v = e.get<std::uint64_t>();
    if (v >= view.order()) throw UsageError("subset element " + std::to_string(v) + " is outside the group");
    s.set(static_cast<Element>(v));
  }
  return {arity, std::move(s)};
}

std::string names(const Group& g, std::size_t arity, const std::vector<Element>& elems) {
  const ProductView view = ProductView::power(g, arity);
  std::string out;
  for (Element e : elems) {
    if (!out.empty()) out += ' ';
    if (arity == 1) {
      out += g.name(e);
    } else {
      out += '(';
      const auto c = view.decode(e);
      for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + g.name(c[i]);
      out += ')';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_info(const Options& o, const std::string& spec) {
  require_format(o, false);
  const Group g = catalog(spec);
  const auto cls = nilpotency_class(g);
  const Subset z = center(g), d = derived_subgroup(g);
  const Probability cp = commuting_probability(g);
  json j = {{"group", g.label()},
            {"order", g.order()},
            {"abelian", g.is_abelian()},
            {"exponent", exponent(g)},
            {"center_order", z.count()},
            {"derived_order", d.count()},
            {"classes", class_count(g)},
            {"nilpotency_class", cls ? json(*cls) : json(nullptr)},
            {"two_engel", is_2_engel(g)},
            {"max_centralizer_index", max_centralizer_index(g)},
            {"commuting_probability", to_string(cp)}};
  std::ostringstream t;
  t << "group: " << g.label() << "\norder: " << g.order() << "\nabelian: " << (g.is_abelian() ? "yes" : "no")
    << "\nexponent: " << exponent(g) << "\ncenter order: " << z.count() << "\nderived order: " << d.count()
    << "\nclasses: " << class_count(g) << "\nnilpotency class: " << (cls ? std::to_string(*cls) : "none")
    << "\n2-Engel: " << (is_2_engel(g) ? "yes" : "no") << "\nmax centralizer index: " << max_centralizer_index(g)
    << "\ncommuting probability: " << show(cp) << '\n';
  emit(o, j, t.str());
  return kOk;
}

int cmd_solve(const Options& o, const std::string& spec, const std::string& eq, std::size_t limit) {
  require_format(o, false);
  const Group g = catalog(spec);
  const SolutionSet s = solution_set(g, parse_equation(eq), parse_bindings(g, o.consts));
  std::ostringstream t;
  t << s.count() << " of " << s.total() << " tuples, probability " << show(s.probability()) << '\n';
  if (s.count() <= limit) {
    std::vector<Element> all = s.bits().elements();
    t << "solutions: " << names(g, s.arity(), all) << '\n';
  }
  emit(o, s.to_json(limit), t.str());
  return kOk;
}

int cmd_prob(const Options& o, const std::string& spec, const std::string& eq) {
  require_format(o, true);
  const Group g = catalog(spec);
  const Equation e = parse_equation(eq);
  const SolutionSet s = solution_set(g, e, parse_bindings(g, o.consts));
  const Probability p = s.probability();
  if (o.format == "csv") {
    std::cout << "group,equation,count,total,probability\n"
              << g.label() << ",\"" << to_string(e) << "\"," << s.count() << ',' << s.total() << ',' << to_string(p)
              << '\n';
    return kOk;
  }
  json j = {{"group", g.label()}, {"equation", to_string(e)}, {"count", s.count()}, {"total", s.total()}};
  j["probability"] = probability_json(p);
  emit(o, j, show(p) + "\n");
  return kOk;
}

int cmd_largeness(const Options& o, const std::string& spec, const std::string& eq, const std::string& subset) {
  require_format(o, false);
  const Group g = catalog(spec);
  if (eq.empty() == subset.empty()) throw UsageError("give exactly one of an equation or --subset");
  const SubsetArg x = eq.empty() ? parse_subset(g, subset, o) : parse_subset(g, "solutions:" + eq, o);
  const ProductView view = ProductView::power(g, x.arity);
  const LargenessReport r = largeness_report(view, x.bits, budget_of(o));
  std::ostringstream t;
  t << "subset size: " << r.subset_size << " of " << r.group_order << "\ngenericity: " << r.genericity.str()
    << "\nlargeness: " << r.largeness.str() << '\n';
  if (!r.genericity_certificate.translators.empty())
    t << "cover by translates of X: " << names(g, x.arity, r.genericity_certificate.translators) << '\n';
  if (!r.largeness_certificate.translators.empty())
    t << "cover by translates of the complement: " << names(g, x.arity, r.largeness_certificate.translators)
      << '\n';
  emit(o, r.to_json(), t.str());
  return kOk;
}

int cmd_cover(const Options& o, const std::string& spec, const std::string& subset) {
  require_format(o, false);
  const Group g = catalog(spec);
  const SubsetArg y = parse_subset(g, subset, o);
  const ProductView view = ProductView::power(g, y.arity);
  const CoverResult r = cover_number(view, y.bits, budget_of(o));
  json j = {{"cover_number", r.number.to_json()}, {"certificate", to_json(r.certificate)}};
  std::ostringstream t;
  t << r.number.str() << '\n';
  if (!r.certificate.translators.empty()) t << "translators: " << names(g, y.arity, r.certificate.translators) << '\n';
  emit(o, j, t.str());
  return kOk;
}

std::vector<Group> build_groups(const std::string& list) {
  std::vector<Group> gs;
  for (const auto& s : expand_group_list(list)) gs.push_back(catalog(s));
  return gs;
}

int cmd_verify(const Options& o, const std::string& which, const std::string& groups) {
  require_format(o, true);
  const std::vector<std::string> ids = which == "all" ? all_check_ids() : expand_group_list(which);
  for (const auto& id : ids) find_check(id);
  CheckOptions co;
  co.budget = budget_of(o);
  const SuiteReport r = run_suite(build_groups(groups), ids, co, o.jobs);
  if (o.format == "json") {
    std::cout << r.to_json().dump(2) << '\n';
  } else if (o.format == "csv") {
    std::cout << r.to_csv();
  } else {
    for (const auto& c : r.results)
      std::cout << (c.passed ? "PASS" : "FAIL") << ' ' << c.check << ' ' << c.group << (c.vacuous ? " (vacuous)" : "")
                << (c.margin ? " margin " + to_string(*c.margin) : "") << '\n';
    std::cout << r.results.size() - r.failed() << " passed, " << r.failed() << " failed, " << r.vacuous()
              << " vacuous\n";
  }
  for (const auto& e : r.errors) std::cerr << "error: " << e << '\n';
  return r.ok() ? kOk : kFailed;
}

int cmd_search(const Options& o, const std::string& question, const std::string& groups) {
  require_format(o, false);
  const auto ce = search_counterexample(question, build_groups(groups), budget_of(o));
  if (!ce) {
    emit(o, json(nullptr), "None\n");
    return kOk;
  }
  json j = {{"question", ce->question}, {"group", ce->group}, {"witness", ce->data}, {"reverified", ce->reverified}};
  emit(o, j, "witness in " + ce->group + ": " + ce->data.dump() + (ce->reverified ? " (re-verified)" : " (NOT re-verified)") +
                 "\n");
  return kFailed;
}

Subset parse_subgroup(const Group& g, const std::string& text) {
  if (text == "G" || text == "all") return g.all();
  if (text == "Z" || text == "center") return center(g);
  if (text == "derived") return derived_subgroup(g);
  const json j = json::parse(text);
  Subset h(g.order());
  for (const auto& e : j.at("elements")) {
    const auto v = e.get<std::uint64_t>();
    if (v >= g.order()) throw UsageError("subgroup element outside the group");
    h.set(static_cast<Element>(v));
  }
  return h;
}

int cmd_ac(const Options& o, const std::string& spec, const std::string& sub, const std::string& sigma_name) {
  require_format(o, false);
  const Group g = catalog(spec);
  const Subset h = parse_subgroup(g, sub);
  AutomorphismGroup sigma;
  if (sigma_name == "inn")
    sigma = inner_automorphisms(g);
  else if (sigma_name == "aut")
    sigma = automorphism_group(g);
  else
    throw UsageError("--sigma must be inn or aut");
  const Autocommutativity ac = autocommutativity(g, h, sigma);
  const Subset fix = fixed_subgroup(g, sigma);
  json j = {{"group", g.label()},
            {"sigma", sigma.group.label()},
            {"sigma_order", sigma.group.order()},
            {"subgroup_order", h.count()},
            {"fixed_pairs", ac.fixed_pairs},
            {"degree", probability_json(ac.degree)},
            {"subgroup_fixed", h.is_subset_of(fix)}};
  std::ostringstream t;
  t << "ac(H; " << sigma.group.label() << ") = " << show(ac.degree) << "\nfixed pairs: " << ac.fixed_pairs << " of "
    << ac.pairs.size() << "\nH fixed by Sigma: " << (h.is_subset_of(fix) ? "yes" : "no") << '\n';
  emit(o, j, t.str());
  return kOk;
}

int cmd_catalog(const Options& o, std::size_t max_order) {
  require_format(o, true);
  const auto specs = catalog_specs(max_order);
  json j = json::array();
  std::ostringstream t;
  if (o.format == "csv") t << "spec,order\n";
  for (const auto& s : specs) {
    const std::size_t n = *parse_group_spec(s).expected_order();
    j.push_back({{"spec", s}, {"order", n}});
    t << s << (o.format == "csv" ? "," : " ") << n << '\n';
  }
  if (o.format == "csv")
    std::cout << t.str();
  else
    emit(o, j, t.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact largeness, genericity and equational probability in finite groups"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--const", o.consts, "bind a constant, name=#index or name=element-name");
    sub->add_option("--budget", o.budget, "cover-search node cap (default EQLARGE_BUDGET_NODES or 10^7)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  std::string spec, eq, subset, which, groups = "catalog<=16", question, sub = "G", sigma = "inn";
  std::size_t limit = 64, max_order = 24;
  std::function<int()> run;

  auto* info = app.add_subcommand("info", "structural summary of a group");
  info->add_option("group", spec)->required();
  common(info);
  info->callback([&] { run = [&] { return cmd_info(o, spec); }; });

  auto* solve = app.add_subcommand("solve", "solution set of an equation");
  solve->add_option("group", spec)->required();
  solve->add_option("equation", eq)->required();
  solve->add_option("--limit", limit, "list solutions when there are at most this many");
  common(solve);
  solve->callback([&] { run = [&] { return cmd_solve(o, spec, eq, limit); }; });

  auto* prob = app.add_subcommand("prob", "exact probability of an equation");
  prob->add_option("group", spec)->required();
  prob->add_option("equation", eq)->required();
  common(prob);
  prob->callback([&] { run = [&] { return cmd_prob(o, spec, eq); }; });

  auto* large = app.add_subcommand("largeness", "largeness and genericity numbers");
  large->add_option("group", spec)->required();
  large->add_option("equation", eq);
  large->add_option("--subset", subset, "JSON {\"elements\":[...]}, @file or solutions:<equation>");
  common(large);
  large->callback([&] { run = [&] { return cmd_largeness(o, spec, eq, subset); }; });

  auto* cover = app.add_subcommand("cover", "minimum number of left translates covering the group");
  cover->add_option("group", spec)->required();
  cover->add_option("--subset", subset)->required();
  common(cover);
  cover->callback([&] { run = [&] { return cmd_cover(o, spec, subset); }; });

  auto* verify = app.add_subcommand("verify", "run theorem checks");
  verify->add_option("checks", which, "all or a comma-separated list of check ids")->required();
  verify->add_option("--groups", groups, "catalog<=N or a comma-separated list of group specs");
  common(verify);
  verify->callback([&] { run = [&] { return cmd_verify(o, which, groups); }; });

  auto* search = app.add_subcommand("search", "search for a counterexample to an open question");
  search->add_option("question", question)->required();
  search->add_option("--groups", groups);
  common(search);
  search->callback([&] { run = [&] { return cmd_search(o, question, groups); }; });

  auto* ac = app.add_subcommand("ac", "autocommutativity degree");
  ac->add_option("group", spec)->required();
  ac->add_option("--subgroup", sub, "G, center, derived or JSON {\"elements\":[...]}");
  ac->add_option("--sigma", sigma, "inn or aut");
  common(ac);
  ac->callback([&] { run = [&] { return cmd_ac(o, spec, sub, sigma); }; });

  auto* cat = app.add_subcommand("catalog", "list catalog groups");
  cat->add_option("--max-order", max_order);
  common(cat);
  cat->callback([&] { run = [&] { return cmd_catalog(o, max_order); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return run();
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << '\n';
    return kUsage;
  }
}
