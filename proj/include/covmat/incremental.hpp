#pragma once

#include <span>
#include <string>

#include "covmat/approximation.hpp"

namespace covmat {

/// Work done by one update: cells settled from the prior matrix (plus, for
/// removals, the removed covering's own product) versus cells recomputed
/// the expensive way. copied + recomputed always equals n*n.
struct UpdateAudit {
    std::size_t cells_copied = 0;
    std::size_t cells_recomputed = 0;

    UpdateAudit& operator+=(const UpdateAudit& other) {
        cells_copied += other.cells_copied;
        cells_recomputed += other.cells_recomputed;
        return *this;
    }
};

// ---- covering addition ----------------------------------------------------
//
// Type1: new = old OR gram(added); adding a covering never clears a 1.
// Type2: new = old AND gram(added); adding a covering never sets a 0.
//
// Fast paths: an all-ones Type1 matrix (or an all-zeros Type2 matrix) is
// already saturated, so the added covering's product is skipped entirely and
// the audit reports zero recomputed cells.

CharMatrix gamma_add(const CharMatrix& type1, const Covering& added,
                     UpdateAudit* audit = nullptr);
CharMatrix pi_add(const CharMatrix& type2, const Covering& added,
                  UpdateAudit* audit = nullptr);

/// Cell-at-a-time variants: only cells the prior matrix leaves undecided
/// (0 cells for Type1, 1 cells for Type2) are recomputed from the added
/// covering's rows. Bit-identical to the matrix-level forms.
CharMatrix gamma_add_cellwise(const CharMatrix& type1, const Covering& added,
                              UpdateAudit* audit = nullptr);
CharMatrix pi_add_cellwise(const CharMatrix& type2, const Covering& added,
                           UpdateAudit* audit = nullptr);

// ---- covering removal -------------------------------------------------
//
// Cell rules, with b/d the prior cell and dc/de the removed covering's own
// characteristic cell:
//
//   Type1:  b=0          -> 0
//           b=1, dc=0    -> 1 (some surviving covering supplied the 1)
//           b=1, dc=1    -> recompute over the survivors
//
//   Type2:  d=1          -> 1 (dropping columns cannot break containment)
//           d=0, de=1    -> 0
//           d=0, de=0    -> recompute over the survivors
//
// The prior matrix must have been built from survivors plus removed.

enum class RemovalCellAction { SetZero, SetOne, Recompute };

/// The cell rule above as a pure function of the prior cell and the removed
/// covering's own cell. Recompute comes back exactly for the indeterminate
/// case: prior and removed_cell both set (Type1), both clear (Type2).
RemovalCellAction removal_cell_action(CharKind kind, bool prior, bool removed_cell);

CharMatrix gamma_remove(const CharMatrix& type1, const CoveringSystem& survivors,
                        const Covering& removed, UpdateAudit* audit = nullptr);
CharMatrix pi_remove(const CharMatrix& type2, const CoveringSystem& survivors,
                     const Covering& removed, UpdateAudit* audit = nullptr);

// ---- end-to-end pipelines ----------------------------------------------
//
// Second approximations of x after a covering addition. NIS rebuilds the
// type-1 matrix of the extended system from scratch; IS updates the base
// system's matrix. Outputs are bit-identical.

ApproxPair pipeline_nis(const CoveringSystem& extended, const SubsetVector& x);
ApproxPair pipeline_is(const CoveringSystem& base, const Covering& added,
                       const SubsetVector& x);
ApproxPair pipeline_is(const CharMatrix& type1_base, const Covering& added,
                       const SubsetVector& x);

// Sixth approximations, same split, via the type-2 matrix.

ApproxPair pipeline_nix(const CoveringSystem& extended, const SubsetVector& x);
ApproxPair pipeline_ix(const CoveringSystem& base, const Covering& added,
                       const SubsetVector& x);
ApproxPair pipeline_ix(const CharMatrix& type2_base, const Covering& added,
                       const SubsetVector& x);

// ---- ordered edit application -------------------------------------------

struct SystemEdit {
    enum class Action { Add, Remove };
    Action action;
    Covering covering;        // Add
    std::string remove_name;  // Remove
};

struct EditOutcome {
    CoveringSystem system;
    CharMatrix characteristic;
    UpdateAudit audit;  // summed over all edits
};

/// Applies a mixed edit list as two passes — additions first (in list
/// order), then removals (in list order) — updating the chosen matrix kind
/// incrementally at each step.
EditOutcome apply_edits(const CoveringSystem& base, std::span<const SystemEdit> edits,
                        CharKind kind);

}  // namespace covmat
