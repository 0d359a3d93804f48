#include <CLI11.hpp>

#include <map>
#include <string>
#include <vector>

#include "cli/commands.hpp"

namespace {

using namespace qwalk::cli;

struct ChoiceTexts {
  std::string format = "csv";
  std::string method = "oracle";
  std::string size = "minimal";
};

const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
const std::map<std::string, MethodChoice> kMethods{{"oracle", MethodChoice::oracle},
                                                   {"closed", MethodChoice::closed},
                                                   {"spectral", MethodChoice::spectral},
                                                   {"lambda", MethodChoice::lambda},
                                                   {"all", MethodChoice::all}};
const std::map<std::string, TransformSize> kSizes{{"minimal", TransformSize::minimal},
                                                  {"pow2", TransformSize::pow2}};

template <typename Map>
std::vector<std::string> keys_of(const Map& m) {
  std::vector<std::string> out;
  for (const auto& kv : m) out.push_back(kv.first);
  return out;
}

void add_walk_options(CLI::App* sub, RunConfig& cfg, ChoiceTexts& texts) {
  sub->add_option("--theta", cfg.theta_text, "coin angle in [0, pi/2]; radians or pi fraction")->capture_default_str();
  sub->add_option("--phi", cfg.varphi_text, "coin phase in [0, pi]")->capture_default_str();
  sub->add_option("--eta", cfg.eta_text, "initial chirality angle in [0, pi/2]")->capture_default_str();
  sub->add_option("--steps", cfg.steps, "number of time steps t")->capture_default_str();
  sub->add_option("--format", texts.format, "csv or json")
      ->check(CLI::IsMember(keys_of(kFormats), CLI::ignore_case))
      ->capture_default_str();
  sub->add_option("--output,-o", cfg.output_path, "output file (default stdout)");
}

void add_method_options(CLI::App* sub, ChoiceTexts& texts) {
  sub->add_option("--method", texts.method, "oracle, closed, spectral, lambda or all")
      ->check(CLI::IsMember(keys_of(kMethods), CLI::ignore_case))
      ->capture_default_str();
  sub->add_option("--transform-size", texts.size, "minimal (N = t+1) or pow2")
      ->check(CLI::IsMember(keys_of(kSizes), CLI::ignore_case))
      ->capture_default_str();
}

void apply(const ChoiceTexts& texts, RunConfig& cfg) {
  cfg.output_format = kFormats.at(texts.format);
  cfg.method = kMethods.at(texts.method);
  cfg.transform_size = kSizes.at(texts.size);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unidirectional discrete-time quantum walk with a general coin"};
  app.require_subcommand(1);

  RunConfig sim_cfg, cmp_cfg, asy_cfg, bench_cfg;
  ChoiceTexts sim_txt, cmp_txt, asy_txt, bench_txt;
  cmp_txt.method = "all";
  bench_txt.format = "json";
  bench_cfg.steps = 4096;

  auto* sim = app.add_subcommand("simulate", "wave function, PMF, current and mean position");
  add_walk_options(sim, sim_cfg, sim_txt);
  add_method_options(sim, sim_txt);

  auto* cmp = app.add_subcommand("compare", "cross-check the four routes against direct evolution");
  add_walk_options(cmp, cmp_cfg, cmp_txt);
  add_method_options(cmp, cmp_txt);
  cmp->add_option("--seed", cmp_cfg.seed, "draw random angles from this seed");
  cmp->add_option("--inject-error", cmp_cfg.inject_error, "perturb the closed route (test aid)")->group("");

  auto* asy = app.add_subcommand("asymptote", "exact PMF against the large-t envelope");
  add_walk_options(asy, asy_cfg, asy_txt);
  add_method_options(asy, asy_txt);
  asy->add_option("--guard", asy_cfg.grid_guard, "edge band excluded from the grid (default max(2/t, 1e-3))");

  auto* bench = app.add_subcommand("bench", "direct inverse sum against radix-2 FFT");
  add_walk_options(bench, bench_cfg, bench_txt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::bad_parameters);
  }

  ExitCode code = ExitCode::ok;
  if (*sim) {
    apply(sim_txt, sim_cfg);
    code = cmd_simulate(sim_cfg);
  } else if (*cmp) {
    apply(cmp_txt, cmp_cfg);
    code = cmd_compare(cmp_cfg);
  } else if (*asy) {
    apply(asy_txt, asy_cfg);
    code = cmd_asymptote(asy_cfg);
  } else if (*bench) {
    apply(bench_txt, bench_cfg);
    code = cmd_bench(bench_cfg);
  }
  return static_cast<int>(code);
}
