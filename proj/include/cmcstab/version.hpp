#pragma once

namespace cmcstab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cmcstab
