#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace attrikit {

// Run one CLI invocation (arguments without the program name). Returns the
// process exit code: 0 success, 1 usage error, 2 data error, 3 training or
// evaluation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace attrikit
