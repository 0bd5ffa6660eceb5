#pragma once

#include <string_view>

namespace issr::detail {

// Files under core/data compiled into the library, keyed by their path
// relative to that directory ("templates/selector.txt"). Empty when absent.
std::string_view embedded_file(std::string_view name);

}  // namespace issr::detail
