// Command line driver: build the engine for a chosen q, run verification
// suites or the counting census, and emit aligned tables or JSON.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boserep/suites.hpp"

namespace {

struct Opts {
  uint32_t q = 0;
  uint32_t p = 0;
  uint32_t k = 1;
  int samples = 30;
  uint64_t seed = 0;
  std::string format = "table";
  std::vector<std::string> suites = {"all"};
  bool samples_given = false;
};

// factor a prime power
bool split_prime_power(uint32_t q, uint32_t& p, uint32_t& k) {
  if (q < 2) return false;
  uint32_t d = 2;
  while (d * d <= q && q % d != 0) ++d;
  p = (d * d <= q) ? d : q;
  uint32_t m = q;
  k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return m == 1;
}

void add_common(CLI::App* cmd, Opts& o) {
  cmd->add_option("--q", o.q, "field order q = p^k (prime power, q > 2)");
  cmd->add_option("--p", o.p, "prime characteristic (alternative to --q)");
  cmd->add_option("--k", o.k, "extension degree with q = p^k");
  cmd->add_option("--samples", o.samples, "containers sampled per row at q > 3")
      ->check(CLI::PositiveNumber)
      ->each([&o](const std::string&) { o.samples_given = true; });
  cmd->add_option("--seed", o.seed, "seed for all sampling");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "json"}));
}

int resolve(Opts& o) {
  if (!o.samples_given) {
    if (const char* env = std::getenv("BOSEREP_SAMPLES")) o.samples = std::atoi(env);
    if (o.samples <= 0) o.samples = 30;
  }
  if (o.q != 0) {
    if (!split_prime_power(o.q, o.p, o.k)) {
      std::cerr << "error: q must be a prime power\n";
      return 2;
    }
  } else if (o.p != 0) {
    uint64_t q64 = 1;
    for (uint32_t i = 0; i < o.k; ++i) q64 *= o.p;
    o.q = static_cast<uint32_t>(q64);
  } else {
    std::cerr << "error: one of --q or --p is required\n";
    return 2;
  }
  if (o.q <= 2) {
    std::cerr << "error: q > 2 required\n";
    return 2;
  }
  return 0;
}

nlohmann::json to_json(const boserep::report::Report& r) {
  nlohmann::json j;
  j["q"] = r.q;
  j["suite"] = r.suite;
  j["claims"] = nlohmann::json::array();
  for (const auto& c : r.claims)
    j["claims"].push_back({{"anchor", c.anchor},
                           {"expected", c.expected},
                           {"computed", c.computed},
                           {"pass", c.pass}});
  return j;
}

void emit(const std::vector<boserep::report::Report>& reports, const std::string& format) {
  if (format == "json") {
    if (reports.size() == 1) {
      std::cout << to_json(reports[0]).dump(2) << "\n";
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      std::cout << arr.dump(2) << "\n";
    }
  } else {
    for (const auto& r : reports) std::cout << boserep::report::to_table(r) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification engine for the order-3 collineation geometry of PG(8,q)"};
  app.require_subcommand(1);
  Opts o;

  auto* census = app.add_subcommand("census", "count every table cell against its closed form");
  add_common(census, o);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify, o);
  verify->add_option("--suite", o.suites,
                     "suites: tables congruence linear-sets figueroa scroll quadric properties all")
      ->check(CLI::IsMember({"tables", "congruence", "linear-sets", "figueroa", "scroll",
                             "quadric", "properties", "all"}))
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  if (int rc = resolve(o)) return rc;

  try {
    auto engine = boserep::suites::build_engine(o.p, o.k);
    std::vector<boserep::report::Report> reports;

    if (census->parsed()) {
      auto cs = boserep::fixed::census(engine.ctx, engine.fs, o.samples, o.seed);
      boserep::report::Report r;
      r.q = o.q;
      r.suite = "census";
      for (const auto& cell : cs.cells)
        r.add("Table " + cell.table + " / " + cell.row + " / " + cell.col, cell.expected,
              cell.computed);
      reports.push_back(std::move(r));
    } else {
      std::vector<std::string> wanted = o.suites;
      if (std::find(wanted.begin(), wanted.end(), "all") != wanted.end())
        wanted = {"tables", "congruence", "linear-sets", "figueroa",
                  "scroll",  "quadric",   "properties"};
      for (const auto& s : wanted) {
        if (s == "tables") reports.push_back(boserep::suites::run_tables(engine, o.samples, o.seed));
        else if (s == "congruence")
          reports.push_back(boserep::suites::run_congruence(engine, o.samples, o.seed));
        else if (s == "linear-sets")
          reports.push_back(boserep::suites::run_linear_sets(engine, o.samples, o.seed));
        else if (s == "figueroa") reports.push_back(boserep::suites::run_figueroa(engine));
        else if (s == "scroll")
          reports.push_back(boserep::suites::run_scroll(engine, o.samples, o.seed));
        else if (s == "quadric")
          reports.push_back(boserep::suites::run_quadric(engine, o.samples, o.seed));
        else if (s == "properties")
          reports.push_back(boserep::suites::run_properties(engine, o.samples, o.seed));
      }
    }

    emit(reports, o.format);
    for (const auto& r : reports)
      if (!r.all_pass()) return 1;
    return 0;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "failure: " << ex.what() << "\n";
    return 1;
  }
}
