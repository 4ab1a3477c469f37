// Rooted decorated planar graphs in the disk, encoded as rotation systems.
//
// Conventions, fixed once and used everywhere:
//  * Every internal vertex has 2m-2 half-edge slots listed counterclockwise:
//    slots 0..m-2 are incoming with edge label slot+1; slots m-1..2m-3 are
//    outgoing with edge label 2m-2-slot.  (Incoming labels read 1..m-1
//    counterclockwise, outgoing labels 1..m-1 clockwise.)
//  * Corner p at a vertex sits between slot p and slot p+1 (mod 2m-2).  Its
//    sector label is R_{p+2} for p < m-2, U_m at p = m-2, L_{2m-2-p} for
//    m-1 <= p <= 2m-4, and U_1 at p = 2m-3.
//  * Boundary leaves are 1-valent; `boundary` lists their half-edge ids in
//    counterclockwise order around the disk, `root` is an index into it.
//  * Faces are orbits of h -> rotation-successor(mate(h)), where the
//    successor at a leaf is the leaf half-edge itself.  The orbit through
//    the leaves visits them in boundary order; the corner runs between
//    consecutive leaves are the boundary regions.
//
// TilingGraph values are immutable after construction; all functions here
// are pure.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cm1/algebra.hpp"

namespace cm1 {

// Malformed half-edge data (broken involution, slot tables out of range).
// Distinct from axiom failures, which validate() reports.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int vertex_degree(int m) { return 2 * m - 2; }
inline bool slot_is_in(int m, int slot) { return slot < m - 1; }
inline int slot_label(int m, int slot) {
  return slot_is_in(m, slot) ? slot + 1 : 2 * m - 2 - slot;
}
inline int in_slot(int /*m*/, int label) { return label - 1; }
inline int out_slot(int m, int label) { return 2 * m - 2 - label; }

// Sector generator of corner p (between slots p and p+1 mod 2m-2).
Gen corner_gen(int m, int p);

struct TilingGraph {
  int m = 0;
  std::vector<std::vector<int>> rotation;  // per internal vertex, CCW slots
  std::vector<int> boundary;               // leaf half-edge ids, CCW
  int root = 0;                            // index into boundary
  std::vector<int> mate;                   // half-edge involution
  std::vector<int> label;                  // per half-edge, 1..m-1
  std::vector<std::uint8_t> is_head;       // head end = edge points at owner

  int num_vertices() const { return static_cast<int>(rotation.size()); }
  int num_leaves() const { return static_cast<int>(boundary.size()); }
  int num_half_edges() const { return static_cast<int>(mate.size()); }
  int num_edges() const { return num_half_edges() / 2; }
  int root_half_edge() const { return boundary[root]; }
};

struct ValidityReport {
  bool degree_ok = false;     // every internal vertex has 2m-2 slots
  bool labels_ok = false;     // directions/labels match the slot pattern
  bool connected_ok = false;  // >= 1 internal vertex, connected
  bool acyclic_ok = false;    // directed cycles through >= 2 vertices absent
  bool planar_ok = false;     // Euler V-E+F = 2, leaves on a single face
  bool boundary_ok = false;   // stored cyclic leaf order matches traversal
  bool faces_ok = false;      // internal faces are admissible mono/bigons
  std::string detail;

  bool valid() const {
    return degree_ok && labels_ok && connected_ok && acyclic_ok && planar_ok &&
           boundary_ok && faces_ok;
  }
};

// Throws StructuralError on malformed half-edge data; otherwise reports
// pass/fail per axiom.
ValidityReport validate(const TilingGraph& g);

enum class FaceKind { Internal, Boundary, Exterior };

struct FaceCorner {
  int vertex;
  int corner_pos;
  Gen sector;
};

struct Face {
  FaceKind kind = FaceKind::Internal;
  std::vector<FaceCorner> corners;
  std::vector<int> intervals;  // root-relative interval indices touched
};

// Disk faces: one per boundary interval, the internal faces, and the face
// outside the boundary circle.  Faces partition the corners.
std::vector<Face> faces(const TilingGraph& g);

struct Reading {
  int iota = 0;                  // root edge label
  std::vector<BasisPath> inputs; // interval products, CCW from the root
};

// Requires validate(g).valid(); throws std::logic_error if a region product
// is zero (which would indicate an inconsistent traversal convention).
Reading algebra_sequence(const AlgebraContext& ctx, const TilingGraph& g);

// Counts of internal faces by type: monogon U_1 -> component 0, type-i
// bigon -> component i-1, monogon U_m -> component m-1.
std::vector<int> weight_vector(const TilingGraph& g);

using CanonicalKey = std::string;

// Key invariant under relabeling of internal ids, computed by breadth-first
// renaming from the root; equal keys iff rooted isomorphic.
CanonicalKey canonical_form(const TilingGraph& g);

TilingGraph rerooted(const TilingGraph& g, int new_root);

// Centered graph with a sequence of 2-valent labeled vertices on the root
// edge.  `labels` multiply, in order, to the output factor.
struct ExtendedGraph {
  enum class Side { Left, Right };
  TilingGraph base;
  Side side = Side::Right;
  std::vector<Gen> labels;
};

struct ExtendedReading {
  int iota = 0;
  std::vector<BasisPath> inputs;
  BasisPath output_factor;  // the idempotent at iota when labels is empty
};

// Reads an extended graph: the extension factor merges into the first
// (left) or last (right) input, and multiplies the output.  Throws
// std::invalid_argument if the labels admit no nonzero reading.
ExtendedReading read_extended(const AlgebraContext& ctx, const ExtendedGraph& e);

// Assembles a graph from vertex-to-vertex slot gluings; every unmatched
// slot becomes a boundary leaf.  The boundary order is derived from the
// face traversal; returns false (via the bool) when the leaves do not lie
// on a single face.  Root is set to 0.
struct SlotRef {
  int v;
  int slot;
};
bool build_centered(int m, int d,
                    const std::vector<std::pair<SlotRef, SlotRef>>& out_in_edges,
                    TilingGraph& out);

std::string to_json_string(const TilingGraph& g);
TilingGraph graph_from_json_string(const std::string& text);
std::string to_dot(const TilingGraph& g);

}  // namespace cm1
