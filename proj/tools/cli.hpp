#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spectratope::cli {

/// Exit codes: 0 affirmative, 1 well-formed negative (JSON body on `out`), 2 usage or input error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace spectratope::cli
