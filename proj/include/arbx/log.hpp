#pragma once

#include <iostream>
#include <sstream>

namespace arbx {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

/// Diagnostics level from the ARBX_LOG environment variable (error|info|debug).
LogLevel log_level();

}  // namespace arbx

#define ARBX_LOG_AT(level, expr)                                     \
  do {                                                               \
    if (static_cast<int>(::arbx::log_level()) >= static_cast<int>(level)) { \
      std::ostringstream os_;                                        \
      os_ << expr;                                                   \
      std::cerr << "arbx: " << os_.str() << std::endl;               \
    }                                                                \
  } while (0)

#define ARBX_LOG_INFO(expr) ARBX_LOG_AT(::arbx::LogLevel::Info, expr)
#define ARBX_LOG_DEBUG(expr) ARBX_LOG_AT(::arbx::LogLevel::Debug, expr)
#define ARBX_LOG_ERROR(expr) ARBX_LOG_AT(::arbx::LogLevel::Error, expr)
