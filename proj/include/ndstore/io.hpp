// CSV round-tripping of stored sets and a minimal SVG plot.
#ifndef NDSTORE_IO_HPP
#define NDSTORE_IO_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "ndstore/geometry.hpp"

namespace nds {

// Lines of `kind,x1,y1,x2,y2` with kind P or S, 12 significant digits.
void export_csv(std::span<const ParetoElement> elems, std::ostream& os);
std::vector<ParetoElement> import_csv(std::istream& is);

// Standalone SVG of the set in objective space.
void write_svg(std::span<const ParetoElement> elems, std::ostream& os);

}  // namespace nds

#endif
