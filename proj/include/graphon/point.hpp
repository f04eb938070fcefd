#pragma once

#include <vector>

namespace graphon {

// A point of the unit cube [0,1]^d.  Everything downstream treats these as
// plain coordinate buffers; dimension checks happen at API boundaries, not
// per arithmetic operation.
using Point = std::vector<double>;

}  // namespace graphon
