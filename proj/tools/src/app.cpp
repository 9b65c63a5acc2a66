// Copyright 2026 The superdiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <boost/program_options.hpp>
#include <exception>
#include <ostream>

#include "superdiv/cli/app.hpp"
#include "superdiv/version.hpp"

namespace superdiv::cli {

namespace po = boost::program_options;

namespace {

void print_usage(std::ostream& out, const po::options_description& desc) {
  out << "usage: superdiv <command> [--config FILE] [--<key> VALUE]...\n\n"
         "commands:\n"
         "  build-network  co-occurrence network of the local corpus\n"
         "  spread         expand the seed lexicon over the corpus network\n"
         "  si             superdiversity index per region\n"
         "  null-model     SI after reshuffling tweets across regions\n"
         "  baselines      tweet counts, language measures and TTR per region\n"
         "  classify-eval  cross-validated sentiment classification\n"
         "  synth-gen      synthetic multi-region corpus\n"
         "  sweep-params   mean r over a grid of range/entropy thresholds\n\n"
      << desc;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  po::options_description general("general options");
  general.add_options()
      ("help,h", "show this help")
      ("version", "print the version")
      ("config,c", po::value<std::string>(), "INI configuration file");
  po::options_description keys("configuration keys (override the file)");
  for (const auto& spec : option_specs()) {
    const std::string name(spec.key);
    const std::string help = std::string(spec.help) + " [" + std::string(spec.section) +
                             "] (default: " + std::string(spec.default_value) + ")";
    keys.add_options()(name.c_str(), po::value<std::string>(), help.c_str());
  }
  po::options_description hidden;
  hidden.add_options()("command", po::value<std::string>());
  po::options_description all;
  all.add(general).add(keys).add(hidden);
  po::options_description visible;
  visible.add(general).add(keys);
  po::positional_options_description positional;
  positional.add("command", 1);

  try {
    po::variables_map vm;
    const std::vector<std::string> argv(args.begin(), args.end());
    po::store(po::command_line_parser(argv).options(all).positional(positional).run(), vm);
    if (vm.count("help")) {
      print_usage(out, visible);
      return kExitOk;
    }
    if (vm.count("version")) {
      out << "superdiv " << kVersion << '\n';
      return kExitOk;
    }
    if (!vm.count("command")) {
      print_usage(err, visible);
      return kExitConfig;
    }
    Settings overrides;
    for (const auto& spec : option_specs()) {
      const std::string name(spec.key);
      if (vm.count(name)) overrides[name] = vm[name].as<std::string>();
    }
    std::optional<std::filesystem::path> ini;
    if (vm.count("config")) ini = vm["config"].as<std::string>();
    const auto settings = resolve_settings(ini, overrides);
    run_command(vm["command"].as<std::string>(), settings, out, err);
    return kExitOk;
  } catch (const po::error& e) {
    err << "superdiv: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "superdiv: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "superdiv: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace superdiv::cli
