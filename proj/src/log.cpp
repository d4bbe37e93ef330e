#include "arbx/log.hpp"

#include <cstdlib>
#include <string>

namespace arbx {

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("ARBX_LOG");
    if (env == nullptr) return LogLevel::Error;
    std::string v(env);
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

}  // namespace arbx
