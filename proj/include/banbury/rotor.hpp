#pragma once

#include "banbury/alphabet.hpp"
#include "banbury/permutation.hpp"

#include <string>
#include <vector>

namespace banbury::enigma {

/// A rotor: a fixed wiring plus the turnover points at which it advances its
/// left neighbour. Turnovers are wiring-relative: with ring setting r the
/// carry fires when the rotor steps from window position (notch + r).
struct RotorSpec {
    std::string name;
    Permutation wiring;
    std::vector<int> turnovers; // wiring-relative indices, non-empty

    RotorSpec() = default;
    RotorSpec(std::string name, Permutation wiring, std::vector<int> turnovers);
};

struct ReflectorSpec {
    std::string name;
    Permutation wiring; // fixed-point-free involution

    ReflectorSpec() = default;
    ReflectorSpec(std::string name, Permutation wiring);
};

/// Disjoint letter pairs; the induced map swaps paired letters and leaves the
/// rest alone.
class Plugboard {
public:
    explicit Plugboard(int alphabet_size = 26);
    Plugboard(const std::vector<std::pair<int, int>>& pairs, int alphabet_size = 26);

    int apply(int x) const { return map_[static_cast<size_t>(x)]; }
    int pair_count() const;
    std::vector<std::pair<int, int>> pairs() const;
    int size() const { return static_cast<int>(map_.size()); }

private:
    std::vector<int> map_;
};

/// Named rotors and reflectors, loadable from a TSV catalogue file
/// (NAME<TAB>WIRING<TAB>NOTCHES, reflector rows use "-" for notches).
class Catalogue {
public:
    Catalogue() = default;

    static Catalogue standard(); // historical I..V + reflectors B, C
    static Catalogue load(const std::string& path, const Alphabet& alphabet = Alphabet::latin26());
    void store(const std::string& path, const Alphabet& alphabet = Alphabet::latin26()) const;

    void add_rotor(RotorSpec rotor);
    void add_reflector(ReflectorSpec reflector);

    const RotorSpec& rotor(const std::string& name) const;
    const ReflectorSpec& reflector(const std::string& name) const;
    bool has_rotor(const std::string& name) const;

    const std::vector<RotorSpec>& rotors() const { return rotors_; }
    const std::vector<ReflectorSpec>& reflectors() const { return reflectors_; }

private:
    std::vector<RotorSpec> rotors_;
    std::vector<ReflectorSpec> reflectors_;
};

} // namespace banbury::enigma
