#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "dslice/algebra.hpp"

namespace dslice {

struct pd_parse_error : std::runtime_error {
    size_t offset;
    pd_parse_error(const std::string& msg, size_t off)
        : std::runtime_error(msg + " (offset " + std::to_string(off) + ")"), offset(off) {}
};

// Planar diagram code for an oriented link. A crossing X(a,b,c,d) lists the
// four arc labels counterclockwise from the incoming under-strand, so the
// under-strand runs a -> c and the over-strand occupies slots b, d.
//
// Arc orientations are recovered at parse time: the under-passes fix in/out
// roles, roles propagate along arcs, and any leftover all-over cycles are
// oriented by consecutive arc numbering. The empty string parses as the
// 0-crossing unknot.
class PDCode {
public:
    struct Crossing {
        long arc[4];  // slot 0..3, slot 0 = incoming under, ccw
    };

    static PDCode parse(const std::string& text);
    static PDCode from_crossings(const std::vector<Crossing>& xs);

    long num_crossings() const { return static_cast<long>(xs_.size()); }
    long num_arcs() const { return static_cast<long>(arc_labels_.size()); }
    long num_components() const { return ncomp_; }
    // Connected pieces of the underlying 4-valent plane graph.
    long num_split_pieces() const { return nsplit_; }

    const std::vector<Crossing>& crossings() const { return xs_; }
    const std::vector<long>& arc_labels() const { return arc_labels_; }
    // component (0-based) of arc by dense arc index
    long component_of_arc_index(long idx) const { return comp_of_arc_[static_cast<size_t>(idx)]; }
    long component_of_arc(long label) const;
    long split_piece_of_crossing(long k) const { return split_of_x_[static_cast<size_t>(k)]; }

    // +1 when the over-strand runs slot3 -> slot1 (right-handed frame with
    // the under-strand), -1 otherwise. Crossings are indexed by position.
    int crossing_sign(long k) const;
    // Slot (1 or 3) where the over-strand enters crossing k.
    int over_in_slot(long k) const { return over_in_slot_[static_cast<size_t>(k)]; }

    // Over/under swapped at every crossing (mirror image diagram).
    PDCode mirrored() const;

    std::string to_string() const;

private:
    std::vector<Crossing> xs_;
    std::vector<long> arc_labels_;          // sorted distinct labels
    std::vector<long> comp_of_arc_;         // dense arc index -> component
    std::vector<int> over_in_slot_;         // per crossing: 1 or 3
    std::vector<long> split_of_x_;          // crossing -> split piece
    long ncomp_ = 1;
    long nsplit_ = 0;

    long arc_index(long label) const;
    void finish(size_t text_offset);
    friend struct PdBuilder;
};

// Symmetric, zero-diagonal matrix of pairwise linking numbers,
// lk(i,j) = half the signed count of crossings between components i and j.
IntMatrix linking_matrix(const PDCode& d);

// Reduced Goeritz matrix of the checkerboard colouring (one region deleted
// per split piece, pieces direct-summed). The cokernel presents
// H1 of the double branched cover up to free summands from split pieces.
IntMatrix goeritz_matrix(const PDCode& d);

// |det| of the reduced Goeritz form; 0 when the diagram has several split
// pieces (split links have vanishing determinant).
mpz_class link_determinant(const PDCode& d);

// H1 of the double branched cover computed from the Goeritz form, including
// one free summand per extra split piece.
AbelianGroupClass branched_cover_group_pd(const PDCode& d);

// Signature of the Goeritz form corrected by the type II crossing count
// (Gordon-Litherland); equals the Levine-Tristram signature at -1.
long murasugi_signature(const PDCode& d);

namespace detail {
// Test hook: Goeritz data for a chosen colour class and deleted region.
IntMatrix goeritz_matrix_opts(const PDCode& d, bool flip_colour, long deleted_region);
long murasugi_signature_opts(const PDCode& d, bool flip_colour);
}  // namespace detail

}  // namespace dslice
