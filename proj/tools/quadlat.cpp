#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "quadlat/cache.hpp"
#include "quadlat/catalogue.hpp"
#include "quadlat/enumerate.hpp"
#include "quadlat/fixtures.hpp"
#include "quadlat/isometry.hpp"
#include "quadlat/mass.hpp"
#include "quadlat/spinor.hpp"
#include "quadlat/verify.hpp"
#include "quadlat/watson.hpp"

using namespace quadlat;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kUndecided = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string format = "table";
  int jobs = 1;
  std::string cache;
  std::string catalogue;
  bool strict = false;
  i64 disc = 0;
  int rank = 4;
  i64 prime = 0;
  int steps = 1;
  std::string input;
  std::string scope = "quick";
  std::vector<std::string> ids;
  std::string profile;
  std::string out;
  std::unique_ptr<GenusCache> genus_cache;

  GenusSource source() {
    if (cache.empty()) return {};
    if (!genus_cache) genus_cache = std::make_unique<GenusCache>(cache);
    return genus_cache->source();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// fixture:NAME, n:[coeffs], a JSON Gram, or @file holding one of these per line
GramLattice parse_input(const std::string& text) {
  if (text.rfind("fixture:", 0) == 0) {
    auto f = fixture(text.substr(8));
    if (!f) throw UsageError("unknown fixture " + text.substr(8));
    return *f;
  }
  if (!text.empty() && text[0] == '@') {
    std::istringstream in(read_file(text.substr(1)));
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      try {
        return parse_input(line);
      } catch (const std::exception& e) {
        throw UsageError(text.substr(1) + ":" + std::to_string(no) + ": " + e.what());
      }
    }
    throw UsageError(text.substr(1) + ": no input");
  }
  try {
    if (text.find(':') != std::string::npos) return form_to_lattice(parse_form(text));
    return parse_gram(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot parse input: ") + e.what());
  }
}

json gram_json(const GramLattice& l) { return l.gram().to_rows(); }

std::string mass_str(const MassValue& m) { return m.str(); }

json local_json(const GramLattice& l, i64 p) {
  JordanSplitting js = jordan_split(l, p);
  return {{"prime", p},
          {"profile", p_profile(l, p).exps},
          {"jordan", js.str()},
          {"symbol", local_symbol(js).str()},
          {"theta", theta_group(js).str()},
          {"local_mass", mass_str(local_mass(js))}};
}

json cmd_analyze(Config& c) {
  GramLattice l = parse_input(c.input);
  json j;
  j["gram"] = gram_json(l);
  j["rank"] = l.rank();
  j["disc"] = discriminant(l);
  j["form_disc"] = form_disc(l);
  j["genus"] = genus_symbol(l).str();
  j["local"] = json::array();
  for (i64 p : bad_primes(l)) j["local"].push_back(local_json(l, p));
  j["g_plus"] = g_plus(l);
  j["g"] = g_count(l);
  j["mass"] = mass_str(total_mass(l));
  j["aut"] = aut_order(l);
  return j;
}

json genus_json(const GenusReport& g) {
  json j;
  j["symbol"] = g.symbol.str();
  j["multiplier"] = g.multiplier;
  j["h"] = g.genus.classes.size();
  j["g"] = g.genus.g;
  j["g_plus"] = g.genus.g_plus;
  j["h_s"] = g.h_s;
  j["mass"] = mass_str(g.genus.mass);
  j["classes"] = json::array();
  for (size_t i = 0; i < g.genus.classes.size(); ++i)
    j["classes"].push_back({{"gram", gram_json(g.genus.classes[i])},
                            {"aut", g.genus.aut[i]},
                            {"spinor_genus", g.genus.part.empty() ? 0 : g.genus.part[i]}});
  return j;
}

json report_json(const ClassificationReport& rep) {
  json j{{"rank", rep.rank}, {"disc", rep.disc}, {"classes", rep.total_classes()}, {"genera", json::array()}};
  for (const auto& g : rep.genera) j["genera"].push_back(genus_json(g));
  return j;
}

void need_disc(const Config& c) {
  if (c.disc <= 0) throw UsageError("--disc is required");
  if (c.rank != 3 && c.rank != 4) throw UsageError("--rank must be 3 or 4");
}

json cmd_classify(Config& c) {
  need_disc(c);
  return report_json(classify(classes_by_form_disc(c.rank, c.disc), true, c.source()));
}

std::vector<SweepStep> run_sweep(Config& c) {
  need_disc(c);
  if (c.prime < 2) throw UsageError("--prime is required");
  SweepOptions o;
  o.jobs = c.jobs;
  o.complete_last = true;
  o.source = c.source();
  o.progress = [&](const SweepStep& st) {
    std::fprintf(stderr, "disc %lld: %zu ascended, %zu genera\n", static_cast<long long>(st.disc),
                 st.ascended.classes.size(), st.report.genera.size());
  };
  return ascension_sweep(classes_by_form_disc(c.rank, c.disc), c.prime, c.steps, o);
}

json cmd_ascend(Config& c) {
  json j = json::array();
  for (const auto& st : run_sweep(c)) j.push_back(report_json(st.report));
  return j;
}

json cmd_find_ocsg(Config& c) {
  std::vector<ClassificationReport> reps;
  if (c.prime) {
    for (auto& st : run_sweep(c)) reps.push_back(std::move(st.report));
  } else {
    need_disc(c);
    reps.push_back(classify(classes_by_form_disc(c.rank, c.disc), true, c.source()));
  }
  // imprimitive genera repeat primitive ones and are left out
  for (auto& r : reps)
    r.genera.erase(std::remove_if(r.genera.begin(), r.genera.end(), [](const GenusReport& g) { return g.multiplier != 1; }),
                   r.genera.end());
  json j = json::array();
  for (const auto& o : find_one_class_spinor(reps))
    j.push_back({{"gram", gram_json(o.lattice)}, {"form_disc", form_disc(o.lattice)}, {"h", o.h}, {"h_s", o.h_s}, {"g", o.g}});
  return j;
}

json cmd_mass(Config& c) {
  GramLattice l = parse_input(c.input);
  MassReport r = total_mass_report(l);
  json j{{"mass", mass_str(r.mass)}, {"approx", r.mass.to_double()}, {"branch", r.branch}, {"local", json::object()}};
  for (const auto& [p, m] : r.local) j["local"][std::to_string(p)] = mass_str(m);
  return j;
}

json cmd_mu(Config& c) {
  GramLattice l = parse_input(c.input);
  if (c.prime) {
    GramLattice m = mu_p(l, c.prime);
    return {{"prime", c.prime}, {"gram", gram_json(m)}, {"disc", discriminant(m)}};
  }
  MuResult r = mu_hat(l);
  json it = json::object();
  for (const auto& [p, n] : r.iterations) it[std::to_string(p)] = n;
  return {{"gram", gram_json(r.lattice)}, {"disc", discriminant(r.lattice)}, {"iterations", it}, {"fixed", r.fixed}};
}

json cmd_theta(Config& c) {
  GramLattice l = parse_input(c.input);
  json j{{"g_plus", g_plus(l)}, {"g", g_count(l)}, {"theta", json::object()}};
  std::vector<i64> ps = c.prime ? std::vector<i64>{c.prime} : bad_primes(l);
  for (i64 p : ps) {
    SpinorNormGroup t = theta_group(l, p);
    j["theta"][std::to_string(p)] = {{"group", t.str()}, {"contains_units", t.contains_units}};
  }
  return j;
}

std::vector<OneClassGenusEntry> load_cat(const Config& c) {
  return load_catalogue(c.catalogue.empty() ? default_catalogue_path() : c.catalogue);
}

json cmd_profile(Config& c) {
  if (c.prime < 2 || c.profile.empty()) throw UsageError("--prime and --profile are required");
  std::vector<int> exps;
  std::stringstream s(c.profile);
  for (std::string t; std::getline(s, t, ',');) exps.push_back(std::stoi(t));
  auto cat = load_cat(c);
  json j{{"prime", c.prime}, {"profile", exps}, {"matches", json::array()}};
  for (const auto* e : profile_matches(cat, c.prime, exps)) j["matches"].push_back({{"disc", e->disc}, {"gram", gram_json(e->gram)}});
  j["exists"] = !j["matches"].empty();
  return j;
}

json cmd_import(Config& c) {
  if (c.out.empty()) throw UsageError("output path required");
  std::string text = convert_export(read_file(c.input));
  size_t n = parse_catalogue(text, 0).size();
  std::ofstream out(c.out);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + c.out);
  return {{"written", c.out}, {"entries", n}, {"complete", n == kCatalogueSize}};
}

json cmd_verify(Config& c, bool& all_pass) {
  std::vector<std::string> ids = c.ids;
  if (ids.empty()) ids = c.scope == "full" ? all_criteria() : quick_criteria();
  json j = json::array();
  all_pass = true;
  run_acceptance(ids, c.jobs, [&](const CriterionResult& r) {
    if (c.format == "table")
      std::printf("%-4s %s  %.1fs  %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
    j.push_back({{"id", r.id}, {"pass", r.pass}, {"seconds", r.seconds}, {"budget", r.budget}, {"detail", r.detail}});
  });
  return j;
}

void print_table(const json& j, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !(v.is_array() && !v.empty() && !v[0].is_structured())) {
        std::cout << pad << k << ":\n";
        print_table(v, indent + 2);
      } else {
        std::cout << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_object()) {
        std::cout << pad << "- [" << i << "]\n";
        print_table(j[i], indent + 2);
      } else {
        std::cout << pad << "- " << j[i].dump() << "\n";
      }
    }
  } else {
    std::cout << pad << j.dump() << "\n";
  }
}

// Genus rows in one line each; the class lists only in json.
void print_report_table(const json& rep) {
  std::printf("rank %d  disc %lld  classes %d  genera %zu\n", rep["rank"].get<int>(), rep["disc"].get<long long>(),
              rep["classes"].get<int>(), rep["genera"].size());
  for (const auto& g : rep["genera"]) {
    std::string hs;
    for (const auto& x : g["h_s"]) hs += (hs.empty() ? "" : "+") + x.dump();
    std::printf("  %-60s c=%lld h=%-3d g=%d g+=%d h_s=%-8s mass=%s\n", g["symbol"].get<std::string>().c_str(),
                g["multiplier"].get<long long>(), static_cast<int>(g["h"].get<size_t>()), g["g"].get<int>(),
                g["g_plus"].get<int>(), hs.c_str(), g["mass"].get<std::string>().c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadlat: genera, spinor genera and classes of integral quadratic lattices"};
  app.require_subcommand(1);
  Config c;
  app.add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache", c.cache, "genus cache directory");
  app.add_option("--catalogue", c.catalogue, "one-class genus catalogue (JSON)");
  app.add_flag("--strict", c.strict, "exit 3 when a genus partition cannot be certified");

  auto input = [&](CLI::App* s) { s->add_option("input", c.input, "fixture:NAME, n:[coeffs], [[gram]] or @file")->required(); };
  auto disc = [&](CLI::App* s) {
    s->add_option("--disc", c.disc, "form discriminant");
    s->add_option("--rank", c.rank, "3 or 4");
  };

  auto* analyze = app.add_subcommand("analyze", "local and global invariants");
  input(analyze);
  auto* classify_cmd = app.add_subcommand("classify", "all classes of a discriminant by genus");
  disc(classify_cmd);
  auto* ascend = app.add_subcommand("ascend", "Pall ascension sweep from a discriminant");
  disc(ascend);
  ascend->add_option("--prime", c.prime)->required();
  ascend->add_option("--steps", c.steps)->check(CLI::PositiveNumber);
  auto* ocsg = app.add_subcommand("find-ocsg", "one-class spinor genera with h > 1");
  disc(ocsg);
  ocsg->add_option("--prime", c.prime, "ascend at this prime first");
  ocsg->add_option("--steps", c.steps)->check(CLI::PositiveNumber);
  auto* mass = app.add_subcommand("mass", "exact mass");
  input(mass);
  auto* mu = app.add_subcommand("mu", "mu_p, or mu-hat without --prime");
  input(mu);
  mu->add_option("--prime", c.prime);
  auto* theta = app.add_subcommand("theta", "spinor norm groups and g+");
  input(theta);
  theta->add_option("--prime", c.prime);
  auto* profile = app.add_subcommand("profile", "catalogue entries with a given p-profile");
  profile->add_option("--prime", c.prime)->required();
  profile->add_option("--profile", c.profile, "e.g. 0,0,1,2")->required();
  auto* import = app.add_subcommand("import-catalogue", "convert a database export to the catalogue schema");
  import->add_option("export", c.input)->required();
  import->add_option("output", c.out)->required();
  auto* verify = app.add_subcommand("verify-paper", "acceptance criteria");
  verify->add_option("--scope", c.scope)->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("criteria", c.ids, "e.g. A3 A5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    json out;
    bool verdict = true;
    bool report = false;
    CLI::App* sub = app.get_subcommands().front();
    if (sub == analyze) out = cmd_analyze(c);
    else if (sub == classify_cmd) out = cmd_classify(c), report = true;
    else if (sub == ascend) out = cmd_ascend(c);
    else if (sub == ocsg) out = cmd_find_ocsg(c);
    else if (sub == mass) out = cmd_mass(c);
    else if (sub == mu) out = cmd_mu(c);
    else if (sub == theta) out = cmd_theta(c);
    else if (sub == profile) out = cmd_profile(c);
    else if (sub == import) out = cmd_import(c);
    else if (sub == verify) out = cmd_verify(c, verdict);

    if (c.format == "json") {
      std::cout << out.dump(2) << "\n";
    } else if (sub == verify) {
      std::printf("%s\n", verdict ? "all criteria pass" : "some criteria fail");
    } else if (report) {
      print_report_table(out);
    } else if (sub == ascend) {
      for (const auto& r : out) print_report_table(r);
    } else {
      print_table(out);
    }
    if (c.genus_cache)
      std::fprintf(stderr, "cache: %d hits, %d misses\n", c.genus_cache->hits(), c.genus_cache->misses());
    return verdict ? kOk : kFail;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const IncompleteGenusError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return c.strict ? kUndecided : kFail;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  }
}
