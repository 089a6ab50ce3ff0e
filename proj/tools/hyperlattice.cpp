// hyperlattice: command-line front end. See `hyperlattice --help`.

#include <fstream>
#include <iostream>

#include "hyperlattice/cli.hpp"

int main(int argc, char** argv) {
  using namespace hyperlattice::cli;
  RunConfig cfg;
  CLI::App app{"Wavelet frames along Fuchsian lattices: verdicts, identities and tilings"};
  bind_options(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kDomain;
  }
  if (cfg.command.empty()) {
    std::cerr << "missing command; one of:";
    for (const auto& c : command_names()) std::cerr << " " << c;
    std::cerr << "\n";
    return kDomain;
  }

  const CommandResult result = run(cfg);
  const std::string text = render(result.report, cfg.format, cfg.canonical);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return kDomain;
    }
    f << text;
  }
  if (result.report.contains("error")) {
    std::cerr << result.report["error"]["kind"].get<std::string>() << " error: "
              << result.report["error"]["message"].get<std::string>() << "\n";
  }
  return result.exit_code;
}
