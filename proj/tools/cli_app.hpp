#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bdeform::cli {

// args excludes the program name. Exit codes: 0 pass, 1 suite failure,
// 2 usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bdeform::cli
