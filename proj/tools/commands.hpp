#pragma once

#include <filesystem>
#include <string>

#include "uncon/config.hpp"

namespace uncon::cli {

struct Context {
  Config config;
  std::string config_text;  // canonical form after overrides
  std::filesystem::path out;
  std::uint64_t seed = 20240601;
};

int run_command(const Context& ctx);
int project_command(const Context& ctx);
int beta_command(const Context& ctx);
int spectrum_command(const Context& ctx);
int mms_command(const Context& ctx);
int decay_command(const Context& ctx);

}  // namespace uncon::cli
