#pragma once

#include "platelim/conic.hpp"
#include "platelim/yield.hpp"

namespace platelim {

// Standalone program "min t subject to the cone block with kappa pinned".
// Minimizing it must reproduce pi_eval(criterion, x, kappa); used by the
// self-test suite to certify every emitted epigraph block.
inline ConicProgram cone_block_probe(const ConeBlock& block, const Kappa& kappa) {
    ConicProgram p;
    p.cols = 4 + block.aux_count;
    p.objective.assign(p.cols, 0.0);
    p.objective[3] = 1.0;  // t

    // kappa slots pinned by three rows.
    for (int k = 0; k < 3; ++k) {
        p.entries.push_back({k, k, 1.0});
        p.rhs.push_back(kappa[k]);
    }
    int row = 3;
    for (const ConeBlock::Row& eq : block.equalities) {
        for (const ConeBlock::Term& term : eq) p.entries.push_back({row, term.slot, term.coef});
        p.rhs.push_back(0.0);
        ++row;
    }
    p.rows = row;

    // Column cones: slots 0..3 free, aux slots grouped per block metadata.
    std::vector<ConeKind> kind(p.cols, ConeKind::free_block);
    for (int slot : block.nonneg_aux) kind[slot] = ConeKind::nonneg;
    std::vector<int> soc_of(p.cols, -1);
    for (size_t g = 0; g < block.soc_groups.size(); ++g) {
        const auto& grp = block.soc_groups[g];
        for (size_t k = 0; k < grp.size(); ++k) {
            if (grp[k] != grp[0] + static_cast<int>(k))
                throw std::logic_error("cone_block_probe: SOC slots must be contiguous");
            soc_of[grp[k]] = static_cast<int>(g);
        }
    }
    int col = 0;
    while (col < p.cols) {
        if (soc_of[col] >= 0) {
            const auto& grp = block.soc_groups[soc_of[col]];
            p.cones.push_back({ConeKind::soc, static_cast<int>(grp.size())});
            col += static_cast<int>(grp.size());
        } else {
            const ConeKind k = kind[col];
            int dim = 1;
            while (col + dim < p.cols && soc_of[col + dim] < 0 && kind[col + dim] == k) ++dim;
            p.cones.push_back({k == ConeKind::nonneg ? ConeKind::nonneg : ConeKind::free_block, dim});
            col += dim;
        }
    }
    return p;
}

}  // namespace platelim
