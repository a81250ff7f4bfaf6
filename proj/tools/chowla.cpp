// chowla avg    --form a,b,c,d --N n1,n2,... [options]  convergence table
// chowla verify --suite identities|postulates|sieve|all --out dir
//
// Exit codes: 0 success, 1 assertion failure, 2 usage error, 3 range error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chowla/experiments.hpp"

namespace {

constexpr int kOk = 0, kAssert = 1, kUsage = 2, kRange = 3;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Flat key=value lines become --key value arguments placed before the
// command-line ones, so flags given on the command line win.
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chowla::invalid_input("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw chowla::invalid_input("config line without '=': " + line);
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "coprime-only" || key == "coprime_only") {
      if (value == "true" || value == "1") out.push_back("--coprime-only");
      continue;
    }
    out.push_back("--" + key);
    out.push_back(value);
  }
  return out;
}

std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc), file, rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = config_args(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = config_args(args[i].substr(9));
    } else {
      rest.push_back(args[i]);
    }
  }
  if (file.empty() || rest.empty()) return rest;
  // keep the subcommand first
  std::vector<std::string> out{rest[0]};
  out.insert(out.end(), file.begin(), file.end());
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chowla averages of arithmetic functions over binary cubic form values"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_unused;
  app.add_option("--config", config_unused, "flat key=value file mirroring the flags");

  std::string form = "1,0,0,2", alpha = "mu", region = "box:-1,1,-1,1", coset = "Z2", N_list, out, dump;
  bool coprime_only = false;
  double eps = 1;
  unsigned threads = 1;
  auto* avg = app.add_subcommand("avg", "convergence table N,points,sum,average,envelope,ratio");
  avg->add_option("--form", form, "coefficients a,b,c,d of a x^3 + b x^2 y + c x y^2 + d y^3");
  avg->add_option("--alpha", alpha, "mu | lambda | omega");
  avg->add_option("--region", region, "unit-scale region, scaled by each N (box:, disc:, poly:)");
  avg->add_option("--coset", coset, "Z2 or coset:b11,b21,b12,b22;ox,oy");
  avg->add_option("--N", N_list, "strictly increasing list n1,n2,...")->required();
  avg->add_flag("--coprime-only", coprime_only, "only points with gcd(x,y) = 1");
  avg->add_option("--eps", eps, "envelope exponent epsilon");
  avg->add_option("--threads", threads, "worker threads (0 = all cores)");
  avg->add_option("--out", out, "output CSV (default stdout)");
  avg->add_option("--dump", dump, "write the parity grid of the largest N to this file");

  std::string suite_name = "all", out_dir = "verify_out", fault = "none";
  std::uint64_t seed = 1, bound = 1000;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite_name, "identities | postulates | sieve | all");
  verify->add_option("--out", out_dir, "directory for reports");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--bound", bound, "prime-ideal norm bound for the postulate checks (<= 10^4)");
  verify->add_option("--threads", threads, "worker threads");
  verify->add_option("--inject-fault", fault, "none | brun-weight");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const chowla::invalid_input& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*avg) {
      chowla::ExperimentConfig cfg;
      cfg.form = chowla::parse_form(form);
      cfg.alpha = chowla::parse_alpha(alpha);
      cfg.region = chowla::parse_region(region);
      cfg.coset = chowla::parse_coset(coset);
      cfg.N = chowla::parse_N_list(N_list);
      cfg.coprime_only = coprime_only;
      cfg.epsilon = eps;
      cfg.threads = threads;
      cfg.out = out;
      const auto rows = chowla::convergence_table(cfg);
      if (out.empty()) {
        chowla::write_convergence_csv(std::cout, rows);
      } else {
        std::ofstream os(out);
        if (!os) throw chowla::invalid_input("cannot write " + out);
        chowla::write_convergence_csv(os, rows);
      }
      if (!dump.empty() && !cfg.N.empty())
        chowla::write_parity_grid(dump, chowla::sieve_parity_grid(cfg.form, cfg.region.scaled(double(cfg.N.back())),
                                                                  cfg.coset, cfg.alpha, cfg.coprime_only, threads));
      int rc = kOk;
      for (const auto& r : rows)
        if (!r.error.empty()) {
          std::cerr << "row N=" << r.N << ": " << r.error << '\n';
          rc = std::max(rc, r.error.find("range") != std::string::npos ? kRange : kUsage);
        }
      return rc;
    }
    chowla::suite::Options opt;
    opt.seed = seed;
    opt.threads = threads;
    opt.out_dir = out_dir;
    opt.postulate_bound = bound;
    if (fault == "brun-weight")
      opt.fault = chowla::suite::Fault::brun_weight;
    else if (fault != "none")
      throw chowla::invalid_input("unknown fault '" + fault + "'");
    const auto outcome = chowla::suite::run_suite(suite_name, opt);
    outcome.write_csv(std::cout);
    if (const auto* f = outcome.first_failure()) {
      std::cerr << "FAIL " << f->name << ": " << f->counterexample << '\n';
      return kAssert;
    }
    return kOk;
  } catch (const chowla::range_error& e) {
    std::cerr << "range error: " << e.what() << '\n';
    return kRange;
  } catch (const chowla::invalid_input& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const chowla::unsupported& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const chowla::error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kAssert;
  }
}
