#ifndef GAUSSRES_VERSION_HPP
#define GAUSSRES_VERSION_HPP

namespace gaussres {

inline constexpr const char* kVersionString = "1.0.0";

}

#endif
