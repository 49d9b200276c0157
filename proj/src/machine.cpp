#include "banbury/machine.hpp"

#include <stdexcept>

namespace banbury::enigma {

namespace {

int modn(int x, int n) {
    return ((x % n) + n) % n;
}

bool at_turnover(const RotorSlot& slot, int n) {
    // turnovers are wiring-relative; the ring shifts the effective window letter
    int rel = modn(slot.position - slot.ring, n);
    for (int t : slot.spec.turnovers)
        if (t == rel)
            return true;
    return false;
}

int rotor_forward(const RotorSlot& slot, int c, int n) {
    int shifted = modn(c + slot.position - slot.ring, n);
    return modn(slot.spec.wiring.apply(shifted) - slot.position + slot.ring, n);
}

int rotor_backward(const RotorSlot& slot, int c, int n) {
    int shifted = modn(c + slot.position - slot.ring, n);
    return modn(slot.spec.wiring.apply_inverse(shifted) - slot.position + slot.ring, n);
}

int raw_map(const MachineState& state, int letter) {
    const int n = state.alphabet_size();
    int c = state.plugboard.apply(letter);
    for (auto it = state.rotors.rbegin(); it != state.rotors.rend(); ++it)
        c = rotor_forward(*it, c, n);
    c = state.reflector.wiring.apply(c);
    for (const RotorSlot& slot : state.rotors)
        c = rotor_backward(slot, c, n);
    return state.plugboard.apply(c);
}

int raw_scrambler(const MachineState& state, int letter) {
    const int n = state.alphabet_size();
    int c = letter;
    for (auto it = state.rotors.rbegin(); it != state.rotors.rend(); ++it)
        c = rotor_forward(*it, c, n);
    c = state.reflector.wiring.apply(c);
    for (const RotorSlot& slot : state.rotors)
        c = rotor_backward(slot, c, n);
    return c;
}

void validate(const MachineState& state) {
    const int n = state.alphabet_size();
    if (state.rotors.empty())
        throw std::invalid_argument("machine has no rotors");
    if (state.plugboard.size() != n)
        throw std::invalid_argument("plugboard size does not match alphabet");
    for (const RotorSlot& slot : state.rotors) {
        if (slot.spec.wiring.size() != n)
            throw std::invalid_argument("rotor size does not match alphabet");
        if (slot.ring < 0 || slot.ring >= n || slot.position < 0 || slot.position >= n)
            throw std::invalid_argument("ring or position out of range");
    }
}

} // namespace

std::vector<int> MachineState::positions() const {
    std::vector<int> out;
    out.reserve(rotors.size());
    for (const RotorSlot& slot : rotors)
        out.push_back(slot.position);
    return out;
}

MachineState MachineState::with_positions(const std::vector<int>& positions) const {
    if (positions.size() != rotors.size())
        throw std::invalid_argument("position count does not match rotor count");
    MachineState next = *this;
    for (size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] < 0 || positions[i] >= alphabet_size())
            throw std::invalid_argument("position out of range");
        next.rotors[i].position = positions[i];
    }
    return next;
}

MachineState step(const MachineState& state) {
    validate(state);
    const int n = state.alphabet_size();
    MachineState next = state;
    // plain odometer: a rotor advances its left neighbour exactly when it
    // steps away from a turnover point
    bool carry = true;
    for (size_t i = next.rotors.size(); i-- > 0 && carry;) {
        carry = at_turnover(next.rotors[i], n);
        next.rotors[i].position = modn(next.rotors[i].position + 1, n);
    }
    return next;
}

MachineState advance(const MachineState& state, long n) {
    if (n < 0)
        throw std::invalid_argument("cannot advance by a negative count");
    MachineState s = state;
    for (long i = 0; i < n; ++i)
        s = step(s);
    return s;
}

std::pair<int, MachineState> encipher_letter(const MachineState& state, int letter) {
    validate(state);
    if (letter < 0 || letter >= state.alphabet_size())
        throw std::invalid_argument("letter outside alphabet");
    if (state.step_after) {
        int out = raw_map(state, letter);
        return {out, step(state)};
    }
    MachineState stepped = step(state);
    int out = raw_map(stepped, letter);
    return {out, stepped};
}

std::pair<std::vector<int>, MachineState> encipher_message(const MachineState& state,
                                                           const std::vector<int>& letters) {
    std::vector<int> out;
    out.reserve(letters.size());
    MachineState s = state;
    for (int letter : letters) {
        auto [c, next] = encipher_letter(s, letter);
        out.push_back(c);
        s = std::move(next);
    }
    return {std::move(out), std::move(s)};
}

Permutation cipher_alphabet_at(const MachineState& state) {
    validate(state);
    MachineState effective = state.step_after ? state : step(state);
    std::vector<int> f(static_cast<size_t>(state.alphabet_size()));
    for (int x = 0; x < state.alphabet_size(); ++x)
        f[static_cast<size_t>(x)] = raw_map(effective, x);
    return Permutation(std::move(f));
}

Permutation scrambler_at(const MachineState& state) {
    validate(state);
    std::vector<int> f(static_cast<size_t>(state.alphabet_size()));
    for (int x = 0; x < state.alphabet_size(); ++x)
        f[static_cast<size_t>(x)] = raw_scrambler(state, x);
    return Permutation(std::move(f));
}

KeyspaceBreakdown keyspace_size(const KeyspaceModel& model) {
    using U = unsigned __int128;
    if (model.available_rotors < model.chosen_rotors || model.chosen_rotors < 1)
        throw std::invalid_argument("invalid rotor counts");
    if (model.alphabet_size < 2 || model.plug_pairs < 0 ||
        2 * model.plug_pairs > model.alphabet_size)
        throw std::invalid_argument("invalid plug pair count");

    KeyspaceBreakdown out{1, 1, 1, 1, 1};
    for (int i = 0; i < model.chosen_rotors; ++i)
        out.rotor_orders *= static_cast<U>(model.available_rotors - i);
    for (int i = 0; i < model.chosen_rotors; ++i) {
        out.rotor_positions *= static_cast<U>(model.alphabet_size);
        out.ring_settings *= static_cast<U>(model.alphabet_size);
    }
    // A! / ((A-2k)! k! 2^k): multiply the falling factorial, then divide
    U pairings = 1;
    for (int i = 0; i < 2 * model.plug_pairs; ++i)
        pairings *= static_cast<U>(model.alphabet_size - i);
    for (int i = 1; i <= model.plug_pairs; ++i)
        pairings /= static_cast<U>(i);
    for (int i = 0; i < model.plug_pairs; ++i)
        pairings /= 2;
    out.plug_pairings = pairings;
    out.total = out.rotor_orders * out.rotor_positions * out.ring_settings * out.plug_pairings;
    return out;
}

std::string to_string(unsigned __int128 value) {
    if (value == 0)
        return "0";
    std::string out;
    while (value > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    return {out.rbegin(), out.rend()};
}

double to_double(unsigned __int128 value) {
    double out = 0.0;
    double scale = 1.0;
    while (value > 0) {
        out += scale * static_cast<double>(static_cast<unsigned>(value % 1000000000ULL));
        scale *= 1e9;
        value /= 1000000000ULL;
    }
    return out;
}

} // namespace banbury::enigma
