#include "pharmonic/group.hpp"

#include <cstring>
#include <vector>

namespace pharmonic {

namespace {

std::int32_t get_i32(const std::string& bytes, int idx) {
    std::int32_t v;
    std::memcpy(&v, bytes.data() + 4 * idx, 4);
    return v;
}

void put_i32(std::string& bytes, int idx, std::int32_t v) {
    std::memcpy(bytes.data() + 4 * idx, &v, 4);
}

std::string zeros_i32(int n) { return std::string(static_cast<std::size_t>(4 * n), '\0'); }

// Appends one letter to a reduced free-group word, cancelling with the tail.
void push_reduced(std::string& word, char letter) {
    if (!word.empty() && (word.back() ^ 1) == letter)
        word.pop_back();
    else
        word.push_back(letter);
}

} // namespace

GroupSpec GroupSpec::parse(const std::string& name) {
    if (name == "heisenberg") return {GroupFamily::Heisenberg, 0};
    if (name.rfind("z^", 0) == 0) {
        int d = std::stoi(name.substr(2));
        if (d < 1) throw std::invalid_argument("z^d requires d >= 1: " + name);
        return {GroupFamily::FreeAbelian, d};
    }
    if (name.rfind("free:", 0) == 0) {
        int k = std::stoi(name.substr(5));
        if (k < 2) throw std::invalid_argument("free:k requires k >= 2: " + name);
        return {GroupFamily::Free, k};
    }
    throw std::invalid_argument("unknown group \"" + name + "\" (expected z^d, free:k, heisenberg)");
}

std::string GroupSpec::name() const {
    switch (family) {
        case GroupFamily::FreeAbelian: return "z^" + std::to_string(rank);
        case GroupFamily::Free: return "free:" + std::to_string(rank);
        case GroupFamily::Heisenberg: return "heisenberg";
    }
    return "?";
}

Group::Group(GroupSpec spec) : spec_(spec) {
    switch (spec_.family) {
        case GroupFamily::FreeAbelian:
            if (spec_.rank < 1) throw std::invalid_argument("FreeAbelian rank must be >= 1");
            if (spec_.rank > 16) throw std::invalid_argument("FreeAbelian rank > 16 unsupported");
            num_gens_ = 2 * spec_.rank;
            break;
        case GroupFamily::Free:
            if (spec_.rank < 2) throw std::invalid_argument("Free rank must be >= 2");
            if (spec_.rank > 64) throw std::invalid_argument("Free rank > 64 unsupported");
            num_gens_ = 2 * spec_.rank;
            break;
        case GroupFamily::Heisenberg:
            num_gens_ = 4; // x, x^{-1}, y, y^{-1}; z = (0,0,1) is not a generator
            break;
    }
}

Element Group::identity() const {
    switch (spec_.family) {
        case GroupFamily::FreeAbelian: return {zeros_i32(spec_.rank)};
        case GroupFamily::Free: return {std::string()};
        case GroupFamily::Heisenberg: return {zeros_i32(3)};
    }
    return {};
}

Element Group::generator(int s) const {
    if (s < 0 || s >= num_gens_) throw std::out_of_range("generator index");
    switch (spec_.family) {
        case GroupFamily::FreeAbelian: {
            Element e{zeros_i32(spec_.rank)};
            put_i32(e.bytes, s / 2, (s % 2 == 0) ? 1 : -1);
            return e;
        }
        case GroupFamily::Free:
            return {std::string(1, static_cast<char>(s))};
        case GroupFamily::Heisenberg: {
            Element e{zeros_i32(3)};
            put_i32(e.bytes, s / 2, (s % 2 == 0) ? 1 : -1);
            return e;
        }
    }
    return {};
}

Element Group::multiply(const Element& a, const Element& b) const {
    switch (spec_.family) {
        case GroupFamily::FreeAbelian: {
            Element out{zeros_i32(spec_.rank)};
            for (int i = 0; i < spec_.rank; ++i)
                put_i32(out.bytes, i, get_i32(a.bytes, i) + get_i32(b.bytes, i));
            return out;
        }
        case GroupFamily::Free: {
            Element out = a;
            for (char c : b.bytes) push_reduced(out.bytes, c);
            return out;
        }
        case GroupFamily::Heisenberg: {
            // (a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b')
            Element out{zeros_i32(3)};
            put_i32(out.bytes, 0, get_i32(a.bytes, 0) + get_i32(b.bytes, 0));
            put_i32(out.bytes, 1, get_i32(a.bytes, 1) + get_i32(b.bytes, 1));
            put_i32(out.bytes, 2,
                    get_i32(a.bytes, 2) + get_i32(b.bytes, 2) + get_i32(a.bytes, 0) * get_i32(b.bytes, 1));
            return out;
        }
    }
    return {};
}

Element Group::inverse(const Element& a) const {
    switch (spec_.family) {
        case GroupFamily::FreeAbelian: {
            Element out{zeros_i32(spec_.rank)};
            for (int i = 0; i < spec_.rank; ++i) put_i32(out.bytes, i, -get_i32(a.bytes, i));
            return out;
        }
        case GroupFamily::Free: {
            Element out;
            out.bytes.reserve(a.bytes.size());
            for (auto it = a.bytes.rbegin(); it != a.bytes.rend(); ++it)
                out.bytes.push_back(static_cast<char>(*it ^ 1));
            return out;
        }
        case GroupFamily::Heisenberg: {
            // (a,b,c)^{-1} = (-a, -b, -c+ab)
            Element out{zeros_i32(3)};
            std::int32_t x = get_i32(a.bytes, 0), y = get_i32(a.bytes, 1), z = get_i32(a.bytes, 2);
            put_i32(out.bytes, 0, -x);
            put_i32(out.bytes, 1, -y);
            put_i32(out.bytes, 2, -z + x * y);
            return out;
        }
    }
    return {};
}

Element Group::apply_generator(const Element& g, int s) const {
    switch (spec_.family) {
        case GroupFamily::FreeAbelian: {
            Element out = g;
            put_i32(out.bytes, s / 2, get_i32(out.bytes, s / 2) + ((s % 2 == 0) ? 1 : -1));
            return out;
        }
        case GroupFamily::Free: {
            Element out = g;
            push_reduced(out.bytes, static_cast<char>(s));
            return out;
        }
        case GroupFamily::Heisenberg:
            return multiply(g, generator(s));
    }
    return {};
}

std::string Group::generator_name(int s) const {
    if (s < 0 || s >= num_gens_) throw std::out_of_range("generator index");
    switch (spec_.family) {
        case GroupFamily::FreeAbelian: {
            std::string n = (s % 2 == 0) ? "+e" : "-e";
            return n + std::to_string(s / 2 + 1);
        }
        case GroupFamily::Free: {
            char base = static_cast<char>('a' + s / 2);
            if (s % 2 == 1) base = static_cast<char>(base - 'a' + 'A');
            return std::string(1, base);
        }
        case GroupFamily::Heisenberg: {
            static const char* names[4] = {"x", "X", "y", "Y"};
            return names[s];
        }
    }
    return "?";
}

std::string Group::to_string(const Element& g) const {
    switch (spec_.family) {
        case GroupFamily::FreeAbelian:
        case GroupFamily::Heisenberg: {
            int n = (spec_.family == GroupFamily::Heisenberg) ? 3 : spec_.rank;
            std::string out = "(";
            for (int i = 0; i < n; ++i) {
                if (i) out += ",";
                out += std::to_string(get_i32(g.bytes, i));
            }
            return out + ")";
        }
        case GroupFamily::Free: {
            if (g.bytes.empty()) return "e";
            std::string out;
            for (char c : g.bytes) {
                char base = static_cast<char>('a' + (c >> 1));
                out.push_back((c & 1) ? static_cast<char>(base - 'a' + 'A') : base);
            }
            return out;
        }
    }
    return "?";
}

std::int64_t Group::z_coordinate(const Element& g) const {
    if (spec_.family != GroupFamily::FreeAbelian || spec_.rank != 1)
        throw std::logic_error("z_coordinate is defined for z^1 only");
    return get_i32(g.bytes, 0);
}

} // namespace pharmonic
