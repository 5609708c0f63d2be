#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdlc/acceptance.hpp"
#include "tdlc/report.hpp"

namespace {

std::string load_spec(const std::string& spec_arg, const std::string& family,
                      const std::map<std::string, int>& params) {
  if (!spec_arg.empty()) {
    if (!spec_arg.empty() && spec_arg.front() == '{') return spec_arg;
    std::ifstream in(spec_arg);
    if (!in) throw CLI::ValidationError("--spec", "cannot open " + spec_arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  if (family.empty()) {
    throw CLI::ValidationError("--spec", "either --spec or --family is required");
  }
  nlohmann::ordered_json j;
  j["family"] = family;
  for (const auto& [key, value] : params) j[key] = value;
  return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariants of compactly generated t.d.l.c. groups from Cayley-Abels graphs"};
  app.require_subcommand(1);

  tdlc::RunConfig cfg;
  std::string spec_arg, family;
  int degree = 0, degree2 = 0, out_deg = 0, in_deg = 0, red = 0, blue = 0;

  if (const char* env = std::getenv("TDLC_CACHE_DIR")) cfg.cache_dir = env;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--spec", spec_arg, "group spec: JSON file path or inline JSON");
    cmd->add_option("--family", family,
                    "family shortcut: full_aut|aut_plus|end_stab|bm_universal|"
                    "directed_tree|red_blue|cartesian_trees");
    cmd->add_option("--degree", degree, "tree degree d");
    cmd->add_option("--degree2", degree2, "second degree d' (end_stab)");
    cmd->add_option("--out", out_deg, "out-degree (directed_tree)");
    cmd->add_option("--in", in_deg, "in-degree (directed_tree)");
    cmd->add_option("--red", red, "red out-degree (red_blue)");
    cmd->add_option("--blue", blue, "blue out-degree (red_blue)");
    cmd->add_option("--radius", cfg.radius, "ball radius");
    cmd->add_option("--depth", cfg.depth, "exhaustion depth");
    cmd->add_option("--order-bound", cfg.order_bound, "group order bound");
    cmd->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--cache", cfg.cache_dir, "ball cache directory");
    cmd->add_option("--window", cfg.scale_window, "scale ratio window");
    cmd->add_option("--length", cfg.scale_length, "translation length");
    cmd->add_option("--word-length", cfg.arc_word_length, "arc colour word length");
  };

  std::vector<std::string> commands = {"md-bounds", "modular", "scale",
                                       "lsc", "propertyz", "quotient"};
  for (const auto& name : commands) add_common(app.add_subcommand(name));
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--format", cfg.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--order-bound", cfg.order_bound, "group order bound");
  verify->add_option("--cache", cfg.cache_dir, "ball cache directory");

  CLI11_PARSE(app, argc, argv);

  auto* sub = app.get_subcommands().front();
  std::string command = sub->get_name();

  if (command == "verify") {
    tdlc::AcceptanceConfig acfg;
    acfg.order_bound = cfg.order_bound;
    acfg.cache_dir = cfg.cache_dir;
    auto results = tdlc::run_acceptance(acfg);
    std::cout << (cfg.format == "json" ? tdlc::render_acceptance_json(results)
                                       : tdlc::render_acceptance_text(results));
    return tdlc::acceptance_passed(results) ? 0 : 3;
  }

  std::map<std::string, int> params;
  if (degree > 0) params["degree"] = degree;
  if (degree2 > 0) params["degree2"] = degree2;
  if (out_deg > 0) params["out"] = out_deg;
  if (in_deg > 0) params["in"] = in_deg;
  if (red > 0) params["red"] = red;
  if (blue > 0) params["blue"] = blue;

  try {
    cfg.spec_text = load_spec(spec_arg, family, params);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  tdlc::ReportResult result = tdlc::run_report(cfg, command);
  if (result.exit_code != 0) {
    std::cerr << result.text << "\n";
    return result.exit_code;
  }
  std::cout << (cfg.format == "json" ? result.json : result.text);
  if (cfg.format == "json") std::cout << "\n";
  return 0;
}
