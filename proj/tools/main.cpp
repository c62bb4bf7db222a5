#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "instance.hpp"
#include "report.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kInvalid = 2, kRefused = 3 };

struct Args {
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t budget = 0;
  std::string mode;
  bool timing = false;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--input,-i", a.input, "Instance file")->required();
  sub->add_option("--seed", a.seed, "Seed for randomized checks (overrides the file)");
  sub->add_option("--trials", a.trials, "Random trials (overrides the file)");
  sub->add_option("--budget", a.budget, "Largest ring rank to assemble (overrides the file)");
  sub->add_option("--mode", a.mode, "Identity suite mode")->check(CLI::IsMember({"exhaustive", "randomized"}));
  sub->add_option("--out,-o", a.out, "Write the report here instead of stdout");
  sub->add_flag("--timing", a.timing, "Include wall-clock time in the report");
}

int execute(const std::string& subcommand, CLI::App* sub, const Args& a) {
  using namespace jderiv;
  using namespace jderiv::cli;
  try {
    const auto inst = load_instance(a.input);
    std::string command = subcommand;
    if (subcommand == "run") {
      if (!inst.task.command) throw InstanceError("run needs 'command' in [task]");
      command = *inst.task.command;
    } else if (inst.task.command && *inst.task.command != subcommand) {
      throw InstanceError("file declares command '" + *inst.task.command + "' but '" + subcommand +
                          "' was requested");
    }

    RunOptions opt{a.input, {}, {}, {}, {}};
    if (sub->count("--seed")) opt.seed = a.seed;
    if (sub->count("--trials")) opt.trials = a.trials;
    if (sub->count("--budget")) opt.budget = a.budget;
    if (sub->count("--mode")) opt.mode = a.mode == "exhaustive" ? SuiteMode::ExhaustiveBasis : SuiteMode::Randomized;

    const auto start = std::chrono::steady_clock::now();
    auto report = run_command(command, inst, opt);
    if (a.timing) {
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      report["timing_ms"] = ms.count();
    }
    const auto text = report.dump(2) + "\n";
    if (a.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(a.out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write '" + a.out + "'");
      f << text;
    }
    return kOk;
  } catch (const BudgetExceeded& e) {
    std::cerr << "jderiv: refused: " << e.what() << "\n";
    return kRefused;
  } catch (const InstanceError& e) {
    std::cerr << "jderiv: " << a.input << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "jderiv: " << a.input << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidArgument& e) {
    std::cerr << "jderiv: " << a.input << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "jderiv: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derivations and Jordan derivations of finite rings and incidence rings"};
  app.require_subcommand(1);
  Args args;

  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, args);
    subs.emplace_back(name, sub);
  };
  add("solve-der", "Canonical basis of the derivation space");
  add("solve-jder", "Canonical basis of the Jordan derivation space");
  add("compare", "Compare derivations with Jordan derivations");
  add("fi-build", "Assemble FI(P, R) and describe it");
  add("verdict", "Structural verdict for FI(P, R)");
  add("cross-check", "Solve FI(P, R) and R and check them against the verdict");
  add("identities", "Run the identity suite on every Jordan generator");
  add("dprime-check", "Check d' = d for every Jordan generator");
  add("search", "Search small rings for Jordan derivations that are not derivations");
  add("run", "Run the command named in the instance file");

  CLI11_PARSE(app, argc, argv);
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) return execute(name, sub, args);
  return kFailure;
}
