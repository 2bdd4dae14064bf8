#ifndef TAILCHAIN_VERSION_HPP
#define TAILCHAIN_VERSION_HPP

namespace tailchain {
inline constexpr const char* version = "0.1.0";
}

#endif
