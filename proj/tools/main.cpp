#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "berezin_lab/io.hpp"
#include "berezin_lab/run.hpp"

namespace bl = berezin_lab;

namespace {

struct FlagSpec {
  const char* key;
  const char* help;
  bool is_switch = false;
};

// Options shared by every subcommand; the key doubles as the config-file key.
const std::vector<FlagSpec> kFlags = {
    {"space", "fock or dirichlet"},
    {"symbol", "composition symbol, e.g. elliptic:zeta=0.5+0.866i, blaschke:alpha=0.5@pi/3"},
    {"preset", "figure preset: fig1, fig2, fig3, fig3b, fig4, fig5"},
    {"n-r", "radial grid size"},
    {"n-theta", "angular grid size"},
    {"r-max", "largest sampled |z|"},
    {"r-spacing", "uniform or tanh"},
    {"matrix", "inline matrix, rows separated by ';'"},
    {"matrix-file", "matrix text file, one row per line"},
    {"output", "output prefix; writes PREFIX.json and PREFIX.csv or PREFIX.svg"},
    {"format", "csv, json or svg"},
    {"tol", "convexity or inclusion tolerance"},
    {"seed", "seed for sampled pairs and Haar draws"},
    {"boundary-points", "numerical range boundary directions"},
    {"orbit-n1", "first orbit grid size (2x2)"},
    {"orbit-n2", "second orbit grid size (2x2)"},
    {"samples", "Haar unitaries for n > 2"},
    {"criteria", "comma-separated acceptance criterion ids"},
    {"title", "SVG title"},
    {"svg-range", "xmin,xmax,ymin,ymax"},
    {"timing", "record wall time in the report", true},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berezin ranges of composition operators and numerical ranges of matrices"};
  app.set_version_flag("--version", std::string(bl::io::library_version()));
  app.require_subcommand(1);

  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
  std::string config_file;

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"range", "sample the Berezin range of a composition operator"},
      {"convexity", "sample a Berezin range and test it for convexity"},
      {"numrange", "boundary of the numerical range of a matrix"},
      {"orbit", "diagonal entries over unitary orbits of a matrix"},
      {"verify", "run the acceptance suite"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    for (const FlagSpec& f : kFlags) {
      const std::string flag = std::string("--") + f.key;
      if (f.is_switch) {
        sub->add_flag(flag, switches[f.key], f.help);
      } else {
        sub->add_option(flag, values[f.key], f.help);
      }
    }
    sub->add_option("--config", config_file, "key=value file; flags take precedence");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bl::run::kExitConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  bl::run::RunConfig config;
  try {
    config.command = bl::run::parse_command(chosen->get_name());

    std::vector<std::pair<std::string, std::string>> given;
    for (const FlagSpec& f : kFlags) {
      if (chosen->count(std::string("--") + f.key) == 0) continue;
      given.emplace_back(f.key, f.is_switch ? "true" : values[f.key]);
    }
    std::vector<std::pair<std::string, std::string>> from_file;
    if (!config_file.empty()) from_file = bl::run::parse_config_file(bl::io::read_text(config_file));

    // precedence: preset, then config file, then flags
    std::string preset;
    for (const auto& [k, v] : from_file) {
      if (k == "preset") preset = v;
    }
    for (const auto& [k, v] : given) {
      if (k == "preset") preset = v;
    }
    if (!preset.empty()) bl::run::apply_preset(config, preset);
    for (const auto& [k, v] : from_file) {
      if (k != "preset") bl::run::set_option(config, k, v);
    }
    for (const auto& [k, v] : given) {
      if (k != "preset") bl::run::set_option(config, k, v);
    }
  } catch (const bl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bl::run::exit_code_for(e.kind());
  }

  return bl::run::run(config, std::cout, std::cerr).exit_code;
}
