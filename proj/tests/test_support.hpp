#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

namespace testsupport {

inline std::filesystem::path data_path(const std::string& name) {
  if (const char* env = std::getenv("MACRES_DATA")) {
    return std::filesystem::path(env) / name;
  }
#ifdef MACRES_DATA_DIR
  return std::filesystem::path(MACRES_DATA_DIR) / name;
#else
  return std::filesystem::path("data") / name;
#endif
}

inline std::string cli_path() {
  if (const char* env = std::getenv("MACRES_CLI")) return env;
#ifdef MACRES_CLI_PATH
  return MACRES_CLI_PATH;
#else
  return "";
#endif
}

}  // namespace testsupport
