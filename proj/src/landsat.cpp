#include "lct/landsat.hpp"

namespace lct {

const std::array<BandInfo, 7>& landsat5_band_table()
{
    static const std::array<BandInfo, 7> table = {{
        {1, 0.45, 0.52, "Blue-Green", 30.0},
        {2, 0.52, 0.60, "Green", 30.0},
        {3, 0.63, 0.69, "Red", 30.0},
        {4, 0.76, 0.90, "Near IR", 30.0},
        {5, 1.55, 1.75, "Mid-IR", 30.0},
        {6, 10.40, 12.50, "Thermal IR", 120.0},
        {7, 2.08, 2.35, "Mid-IR", 30.0},
    }};
    return table;
}

} // namespace lct
