#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "wrist/config.hpp"
#include "wrist/protocol.hpp"

namespace wrist {

struct CliOptions {
  std::string mode;           // simulate | analyze | reproduce-paper | montecarlo | validate
  std::uint64_t seed = 1;
  std::string config_path;
  std::string out_dir;
  std::string in_path;        // input participant table (analyze/validate)
  int runs = 500;             // montecarlo sessions per modality
  int participants = 11;      // simulate cohort size
};

/// Default location of the bundled participant table.
std::string default_fixtures_path();

/// Builds the protocol configuration, applying any config-file overrides.
ProtocolConfig protocol_config_from(const KeyValueConfig& kv);

int cmd_simulate(const CliOptions& opt, std::ostream& out);
int cmd_analyze(const CliOptions& opt, std::ostream& out);
int cmd_reproduce_paper(const CliOptions& opt, std::ostream& out);
int cmd_montecarlo(const CliOptions& opt, std::ostream& out);
int cmd_validate(const CliOptions& opt, std::ostream& out);

/// Dispatches on opt.mode; returns the process exit code.
int run_cli(const CliOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace wrist
