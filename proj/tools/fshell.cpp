#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fshell/commands.hpp"
#include "fshell/config.hpp"
#include "fshell/errors.hpp"

namespace {

enum Exit { ok = 0, verify_failed = 1, config_error = 2, numerical_failure = 3 };

fshell::RunConfig load_config(const std::string& path) {
  if (path.empty()) return fshell::parse_config("");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fshell::ConfigError("cannot open config file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fshell::parse_config(ss.str());
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw fshell::ConfigError("cannot open output file '" + out_path + "'", 0);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Refined finite-strain shell engine: tube inflation loads and plane-strain vibrations"};
  app.require_subcommand(1);

  std::string config_path, out_path, sweep_text;
  unsigned threads = 0;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (section.key = value)");
    cmd->add_option("--out", out_path, "output path, stdout if omitted");
    cmd->add_option("--threads", threads, "worker threads, 0 for all cores");
  };
  CLI::App* inflate = app.add_subcommand("inflate", "pressure and axial force against stretch");
  CLI::App* vibrate = app.add_subcommand("vibrate", "plane-strain vibration frequencies");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant checks");
  for (CLI::App* cmd : {inflate, vibrate, verify}) add_common(cmd);
  for (CLI::App* cmd : {inflate, vibrate}) cmd->add_option("--sweep", sweep_text, "VAR=START:STOP:STEP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    fshell::RunConfig cfg = load_config(config_path);
    if (!sweep_text.empty()) cfg.sweep = fshell::parse_sweep(sweep_text);

    if (verify->parsed()) {
      const fshell::VerifyReport rep = fshell::run_verify(cfg);
      emit(rep.to_text(), out_path);
      return rep.passed() ? ok : verify_failed;
    }
    const fshell::ResultTable t = inflate->parsed() ? fshell::run_inflate(cfg, threads) : fshell::run_vibrate(cfg, threads);
    for (const std::string& note : t.notes) std::cerr << note << '\n';
    emit(t.to_csv(), out_path);
    return ok;
  } catch (const fshell::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const fshell::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  }
}
