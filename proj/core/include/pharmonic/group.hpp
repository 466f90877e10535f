#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace pharmonic {

enum class GroupFamily { FreeAbelian, Free, Heisenberg };

/// A finitely generated group given by a normal-form word model, together
/// with its standard symmetric generating set.
struct GroupSpec {
    GroupFamily family = GroupFamily::FreeAbelian;
    int rank = 1; // d for Z^d, k for the free group; ignored for Heisenberg

    /// Parses the CLI names "z^d", "free:k", "heisenberg".
    static GroupSpec parse(const std::string& name);
    std::string name() const;

    bool operator==(const GroupSpec&) const = default;
};

/// Group element in canonical normal form, encoded as raw bytes:
///   FreeAbelian(d): d little-endian int32 coordinates,
///   Free(k):        reduced word, one byte per letter (2i = s_i, 2i+1 = s_i^{-1}),
///   Heisenberg:     int32 triple (a, b, c) for x^a y^b z^c.
/// Two elements are equal iff their byte strings are equal.
struct Element {
    std::string bytes;
    bool operator==(const Element&) const = default;
    bool operator<(const Element& o) const { return bytes < o.bytes; }
};

struct ElementHash {
    std::size_t operator()(const Element& e) const { return std::hash<std::string>{}(e.bytes); }
};

/// Word model for one of the supported families. All operations keep
/// elements in canonical normal form.
class Group {
public:
    explicit Group(GroupSpec spec);

    const GroupSpec& spec() const { return spec_; }
    GroupFamily family() const { return spec_.family; }

    /// |S|; generators come in adjacent inverse pairs: index 2i is the i-th
    /// standard generator, index 2i+1 its inverse.
    int num_generators() const { return num_gens_; }
    int inverse_generator(int s) const { return s ^ 1; }

    Element identity() const;
    Element generator(int s) const;
    Element multiply(const Element& a, const Element& b) const;
    Element inverse(const Element& a) const;
    /// g * s, the fast path used by ball construction.
    Element apply_generator(const Element& g, int s) const;

    std::string generator_name(int s) const;
    /// Human-readable normal form: "(1,0,-2)", "abA", "e".
    std::string to_string(const Element& g) const;

    /// FreeAbelian(1) only: the integer coordinate of g.
    std::int64_t z_coordinate(const Element& g) const;

private:
    GroupSpec spec_;
    int num_gens_;
};

} // namespace pharmonic
