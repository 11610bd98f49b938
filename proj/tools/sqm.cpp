#include <Eigen/Core>

#include <algorithm>
#include <cstdlib>
#include <iostream>

#include "cli_common.hpp"
#include "sqm/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kNumerical = 3;

/// STATELESS_QM_THREADS must be a positive integer when set.
int configure_threads() {
  const char* env = std::getenv("STATELESS_QM_THREADS");
  if (!env) {
    Eigen::setNbThreads(1);
    return kOk;
  }
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || n < 1) {
    std::cerr << "sqm: STATELESS_QM_THREADS must be a positive integer, got '" << env << "'\n";
    return kValidation;
  }
  Eigen::setNbThreads(static_cast<int>(n));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const int rc = configure_threads(); rc != kOk) return rc;

  CLI::App app{"Trace-based conditional probabilities and their reduction laws"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cli::Context ctx;
  cli::register_particle(app, ctx);
  cli::register_povm(app, ctx);
  cli::register_field(app, ctx);
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->parse_complete_callback([&ctx] { ctx.out.open(ctx.common); });

  std::vector<std::string> names;
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) names.push_back(sub->get_name());

  try {
    auto args = cli::expand_config(argc, argv, names);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kValidation;
  } catch (const sqm::ValidationError& e) {
    std::cerr << "sqm: validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const sqm::NumericalError& e) {
    std::cerr << "sqm: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "sqm: " << e.what() << "\n";
    return kNumerical;
  }
  if (ctx.out.failures() > 0) {
    std::cerr << "sqm: " << ctx.out.failures() << " of " << ctx.out.records() << " records exceed their tolerance\n";
    return kNumerical;
  }
  return kOk;
}
