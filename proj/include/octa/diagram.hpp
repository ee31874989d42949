#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace octa {

/// Segment roles at a crossing. Incoming ends 1 (upper left) and 2 (lower
/// left), outgoing ends 1' (lower right) and 2' (upper right); strand 1
/// continues as 1' and strand 2 as 2'. Counterclockwise order around every
/// crossing is 1', 2', 1, 2.
enum class Role { In1 = 0, In2 = 1, Out1 = 2, Out2 = 3 };

inline constexpr std::array<Role, 4> kCcwRoles{Role::Out1, Role::Out2, Role::In1, Role::In2};

struct Crossing {
  int sign = 1;              // +1: strand 1 passes over; -1: strand 2 passes over
  std::array<int, 4> seg{};  // dense segment index per Role
  std::array<int, 4> ccw{};  // as given in the input, dense indices

  [[nodiscard]] int at(Role r) const { return seg[static_cast<int>(r)]; }
  [[nodiscard]] Role over_in() const { return sign > 0 ? Role::In1 : Role::In2; }
  [[nodiscard]] Role over_out() const { return sign > 0 ? Role::Out1 : Role::Out2; }
  [[nodiscard]] Role under_in() const { return sign > 0 ? Role::In2 : Role::In1; }
  [[nodiscard]] Role under_out() const { return sign > 0 ? Role::Out2 : Role::Out1; }
};

/// Where a segment starts (tail) or stops (head).
struct SegmentEnd {
  enum class Kind { Crossing, BoundaryIn, BoundaryOut, Loop };
  Kind kind = Kind::Loop;
  int crossing = -1;
  Role role = Role::In1;
  int boundary_pos = -1;
};

struct BaseHint {
  long segment = 0;   // segment label
  bool above = true;  // region above (left of) or below (right of) it
};

/// Input form of a diagram, in terms of the user's segment labels.
struct DiagramSpec {
  struct CrossingSpec {
    int sign = 1;
    long s1 = 0, s2 = 0, s1p = 0, s2p = 0;
    std::array<long, 4> ccw{};
  };
  std::vector<CrossingSpec> crossings;
  std::vector<long> boundary_in;   // top to bottom on the left side
  std::vector<long> boundary_out;  // top to bottom on the right side
  std::vector<long> closed_loops;  // crossingless closed components
  std::optional<BaseHint> base_hint;
};

/// A validated oriented tangle or link diagram with a rotation system.
/// Segments are stored densely as 0..num_segments()-1; labels() maps back to
/// the user's ids.
class Diagram {
 public:
  [[nodiscard]] int num_segments() const { return static_cast<int>(labels_.size()); }
  [[nodiscard]] int num_crossings() const { return static_cast<int>(crossings_.size()); }
  [[nodiscard]] const std::vector<Crossing>& crossings() const { return crossings_; }
  [[nodiscard]] const Crossing& crossing(int c) const { return crossings_.at(c); }
  [[nodiscard]] const std::vector<long>& labels() const { return labels_; }
  [[nodiscard]] long label(int segment) const { return labels_.at(segment); }
  /// Dense index of a segment label; throws InputError if unknown.
  [[nodiscard]] int index_of(long label) const;
  [[nodiscard]] const std::vector<int>& boundary_in() const { return boundary_in_; }
  [[nodiscard]] const std::vector<int>& boundary_out() const { return boundary_out_; }
  [[nodiscard]] const std::vector<int>& closed_loops() const { return closed_loops_; }
  [[nodiscard]] const std::optional<BaseHint>& base_hint() const { return base_hint_; }
  [[nodiscard]] bool is_closed() const { return boundary_in_.empty() && boundary_out_.empty(); }
  [[nodiscard]] const SegmentEnd& head(int segment) const { return head_.at(segment); }
  [[nodiscard]] const SegmentEnd& tail(int segment) const { return tail_.at(segment); }
  [[nodiscard]] const DiagramSpec& spec() const { return spec_; }

  friend Diagram make_diagram(const DiagramSpec& spec);

 private:
  std::vector<Crossing> crossings_;
  std::vector<long> labels_;
  std::vector<int> boundary_in_, boundary_out_, closed_loops_;
  std::optional<BaseHint> base_hint_;
  std::vector<SegmentEnd> head_, tail_;
  DiagramSpec spec_;
};

/// Validates a spec: every segment end used exactly once, rotations
/// consistent with roles, connected, and a planar face trace.
Diagram make_diagram(const DiagramSpec& spec);

/// Parses the JSON diagram format (see docs/formats.md).
Diagram parse_diagram(std::string_view text);

/// Dual-graph step across one segment.
struct DualStep {
  int segment = -1;
  int to = -1;
  int eps = 1;  // +1 when moving from up(segment) to dn(segment)
};

/// Regions, arcs and components derived from a diagram.
struct Combinatorics {
  int num_regions = 0;
  std::vector<int> up, dn;  // per segment: region left / right of it
  std::vector<int> face_size;
  int num_arcs = 0;
  std::vector<int> arc_of;
  std::vector<std::vector<int>> arc_segments;
  int num_components = 0;
  std::vector<int> component_of;
  std::vector<std::vector<int>> component_sequence;  // segments in strand order
  std::vector<bool> component_closed;
  std::vector<std::vector<DualStep>> adjacency;  // per region
  std::vector<std::array<int, 4>> corners;       // per crossing: N, W, S, E
  int base_region = 0;
  std::vector<DualStep> parent;  // BFS tree from base_region; segment -1 at the root
  std::vector<int> bfs_order;
};

Combinatorics build_combinatorics(const Diagram& d);

/// Number of faces traced by the rotation system (used by validation).
int count_faces(const Diagram& d);

struct WirtingerRelation {
  struct Letter {
    int arc = 0;
    int exponent = 1;
  };
  int crossing = 0;
  int lhs = 0;                  // arc of the outgoing under segment
  std::vector<Letter> rhs;      // conjugate of the incoming under arc
  bool degenerate = false;      // over and under arcs coincide (kink)
};

struct WirtingerPresentation {
  int num_generators = 0;  // one per arc
  std::vector<WirtingerRelation> relations;
};

WirtingerPresentation wirtinger_presentation(const Diagram& d, const Combinatorics& c);
std::string to_string(const WirtingerRelation& r);

/// Generator x_i^+ (over, above the segment) or x_i^- (under).
struct GroupoidLetter {
  int segment = 0;
  bool over = true;
  int exponent = 1;
  bool operator==(const GroupoidLetter&) const = default;
};

struct GroupoidWord {
  std::vector<GroupoidLetter> letters;
  int domain = 0;
  int codomain = 0;
};

/// Over path s_j^+ from the base region to region j along the BFS tree.
GroupoidWord over_path(const Combinatorics& c, int region);

/// Over path along an explicit sequence of crossed segments starting at the
/// base region; throws InputError if a step is not adjacent.
GroupoidWord over_path_along(const Combinatorics& c, std::span<const int> segments);

/// The image F(w_i) = s^+ x_i^+ (x_i^-)^{-1} (s^+)^{-1} of a Wirtinger generator.
GroupoidWord wirtinger_image(const Combinatorics& c, int segment);

}  // namespace octa
