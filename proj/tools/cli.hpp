#pragma once

namespace hsurf::cli {

// Exit status: 0 success, 2 a validation or certificate check failed, 1 usage
// or operational error.
int run(int argc, const char* const* argv);

}  // namespace hsurf::cli
