#pragma once

#include <stdexcept>
#include <string>

namespace singseries {

// Error categories, one per failure class. The CLI maps these 1:1 onto
// process exit codes (the enum value is the exit code), so keep them stable.
enum class errc {
  ok = 0,
  usage = 2,       // bad command line
  domain = 3,      // mathematically invalid input (nu > p, nonpositive entry, ...)
  degenerate = 4,  // repeated entries where distinctness is required
  bounds = 5,      // parameter outside the supported range
  capability = 6,  // exact answer exists but this build does not compute it
  budget = 7,      // work estimate exceeds the enumeration budget
  config = 8,      // inconsistent run configuration (cutoff too small, L > N, ...)
  arithmetic = 9,  // internal overflow or loss of exactness
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc c, const std::string& what) { throw error(c, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::ok: return "ok";
    case errc::usage: return "usage";
    case errc::domain: return "domain";
    case errc::degenerate: return "degenerate";
    case errc::bounds: return "bounds";
    case errc::capability: return "capability";
    case errc::budget: return "budget";
    case errc::config: return "config";
    case errc::arithmetic: return "arithmetic";
  }
  return "unknown";
}

}  // namespace singseries
