#ifndef ISOPROD_EMBEDDED_DATA_HPP
#define ISOPROD_EMBEDDED_DATA_HPP

#include <string_view>

// Contents of data/ files, compiled in so the tools run from any directory.
namespace isoprod::embedded {

extern const std::string_view kDefaultCatalog;
extern const std::string_view kDefaultAutBounds;
extern const std::string_view kGoldenTable;

}  // namespace isoprod::embedded

#endif  // ISOPROD_EMBEDDED_DATA_HPP
