#ifndef HOFERCERT_TOOLS_SELFTEST_HPP
#define HOFERCERT_TOOLS_SELFTEST_HPP

#include <ostream>

namespace hofercert::tools {

/// Runs the invariant suite at reduced sample counts, printing one
/// pass/fail line per property. Returns 0 iff everything passed.
int run_selftest(std::ostream& out);

}  // namespace hofercert::tools

#endif
