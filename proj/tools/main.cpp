#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "campaigns.hpp"
#include "gl2lab/errors.hpp"

using gl2lab::cli::CampaignConfig;
using gl2lab::cli::ConfigError;

namespace {

struct Subcommand {
  const char* name;
  const char* help;
};

constexpr Subcommand kSubcommands[] = {
    {"eval-phi", "phi_{p,0}, phi_{p,n} and phi_{p,n,t} at --gamma"},
    {"tree-orbital", "orbital ratio of --gamma by weighted tree counts"},
    {"tree-fixed-set", "stabilized vertices of --gamma; without --gamma, the probe and neighbor-count sweep"},
    {"char-table", "principal-series characters of GL2(Z/p^n); without --p/--n, the decomposition sweep"},
    {"ss-trace", "semisimple trace at one point (--supersingular or --unit-root)"},
    {"verify-norm", "sigma-conjugacy classes vs classes of GL2(Z/p^n)"},
    {"verify-exact-seq", "unit group exact sequence on sampled gamma"},
    {"verify-bc-unit", "base change identity for the unit element"},
    {"verify-tower", "phi_{p,n,t} = phi_{p,n+1,t} * e on branch-covering samples"},
    {"verify-central", "phi_{p,n} commutes with double-coset generators"},
    {"verify-orbital", "orbital ratio equals the closed form"},
    {"verify-cr", "closed form equals the principal-series character sum"},
    {"census", "elliptic curves over F_q with level-m counts; without --q, the census sweep"},
    {"boundary", "boundary term: formula vs orbit enumeration"},
    {"report-all", "every acceptance campaign"},
};

void add_options(CLI::App* sub, CampaignConfig& c, std::string& out) {
  sub->add_option("--p", c.p, "residue characteristic");
  sub->add_option("--r", c.r, "residue degree");
  sub->add_option("--n", c.n, "level (j for verify-bc-unit)");
  sub->add_option("--m", c.m, "prime-to-p level");
  sub->add_option("--q", c.q, "residue field size p^r");
  sub->add_option("--k", c.k, "lower level for verify-bc-unit");
  sub->add_option("--depth", c.depth, "tree search depth");
  sub->add_option("--precision", c.precision, "p-adic working precision");
  sub->add_option("--samples", c.samples, "sample count per case");
  sub->add_option("--gamma", c.gamma, "matrix, e.g. \"[[2,0],[0,1]]\" or \"p^-1 * [[1,0],[0,8]]\"");
  sub->add_option("--unit-root", c.unit_root, "unit Frobenius eigenvalue mod p^n");
  sub->add_flag("--supersingular", c.supersingular, "supersingular point");
  sub->add_flag("--deformed", c.deformed, "use phi_{p,n,t}");
  sub->add_option("--seed", c.seed, "seed for mt19937_64")->capture_default_str();
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", out, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification campaigns for GL2 test functions, Hecke algebras and curve counts"};
  app.require_subcommand(1);
  CampaignConfig config;
  std::string out;
  for (const auto& s : kSubcommands) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_options(sub, config, out);
    sub->callback([&config, name = s.name] { config.command = name; });
  }
  config.format.clear();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const bool census_rows = config.command == "census" && config.q;
  if (config.format.empty()) config.format = census_rows ? "csv" : "json";
  if (config.format == "csv" && !census_rows) {
    std::cerr << "error: csv output is only available for census --q\n";
    return 2;
  }

  try {
    const auto report = gl2lab::cli::run(config);
    const std::string text = config.format == "csv" ? gl2lab::cli::census_csv(report) : report.to_json().dump(2) + "\n";
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        return 2;
      }
      f << text;
    }
    if (!report.pass()) {
      for (const auto& c : report.checks()) {
        if (!c.pass) std::cerr << "FAIL " << c.name << " " << c.inputs.dump() << "\n";
      }
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gl2lab::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gl2lab::ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gl2lab::Error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
