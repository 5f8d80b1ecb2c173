#pragma once

#include <string>

#include "pcoh/engine.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(PCOH_FIXTURE_DIR) + "/" + name;
}

// G = Z_3 cyclically shifting Z_5^3
inline pcoh::PartialAction cyclic_shift_global() {
    pcoh::PartialAction g;
    g.group = pcoh::make_cyclic(3);
    g.ring = pcoh::make_product_ring({5, 5, 5});
    g.domain.assign(3, g.ring.full_ideal());
    g.blockmap = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    return g;
}

// FIXTURE-1: the restriction of the cyclic shift to blocks {0,1}
inline pcoh::PartialAction fixture1() {
    return pcoh::restrict_global(cyclic_shift_global(), pcoh::Ideal{{0, 1}});
}

// FIXTURE-2: Z_4 acting on Z_3^2 through the swap, all domains full
inline pcoh::PartialAction fixture2() {
    pcoh::PartialAction pa;
    pa.group = pcoh::make_cyclic(4);
    pa.ring = pcoh::make_product_ring({3, 3});
    pa.domain.assign(4, pa.ring.full_ideal());
    pa.blockmap = {{0, 1}, {1, 0}, {0, 1}, {1, 0}};
    return pa;
}

// FIXTURE-3: Z_2 acting trivially on Z_5
inline pcoh::PartialAction fixture3() {
    pcoh::PartialAction pa;
    pa.group = pcoh::make_cyclic(2);
    pa.ring = pcoh::make_product_ring({5});
    pa.domain.assign(2, pa.ring.full_ideal());
    pa.blockmap = {{0}, {0}};
    return pa;
}

// Z_2 acting trivially on Z_3 (the classical H^2 anchor)
inline pcoh::PartialAction trivial_z2_on_z3() {
    pcoh::PartialAction pa;
    pa.group = pcoh::make_cyclic(2);
    pa.ring = pcoh::make_product_ring({3});
    pa.domain.assign(2, pa.ring.full_ideal());
    pa.blockmap = {{0}, {0}};
    return pa;
}

inline pcoh::RingElement elem(std::vector<int> residues) { return pcoh::RingElement{std::move(residues)}; }

}  // namespace testutil
