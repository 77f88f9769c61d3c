#pragma once

#include <iosfwd>

namespace hillkrein::selftest {

struct Options {
  bool quick = false;              // elliptic + waveform criteria only
  double tol_zero_override = 0.0;  // nonzero replaces the Hill zero tolerance
};

/// Runs the acceptance criteria, printing one pass/fail line per criterion
/// with timing. Returns the number of failed criteria.
int run(const Options& opts, std::ostream& out);

}  // namespace hillkrein::selftest
