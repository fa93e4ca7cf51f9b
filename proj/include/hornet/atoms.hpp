#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hornet {

// Dense index of an interned propositional symbol.
using AtomId = std::uint32_t;

// Reserved atoms, always present.
inline constexpr AtomId kTrueAtom = 0;
inline constexpr AtomId kFalseAtom = 1;

inline bool is_reserved(AtomId id) { return id <= kFalseAtom; }

/// Bijective interning table for proposition texts. Ids are assigned densely
/// in first-seen order after the two reserved ids ("true" = 0, "false" = 1).
/// Immutable once the owning Program is built; safe to share across threads.
class SymbolTable {
public:
    SymbolTable() {
        intern_fresh("true");
        intern_fresh("false");
    }

    // Surrounding whitespace is trimmed before lookup. Throws
    // std::invalid_argument on empty or whitespace-only text.
    AtomId intern(std::string_view text);

    std::optional<AtomId> find(std::string_view text) const {
        auto it = index_.find(std::string(trim(text)));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    const std::string& text(AtomId id) const { return texts_.at(id); }

    std::size_t size() const { return texts_.size(); }

    static std::string_view trim(std::string_view s);

private:
    AtomId intern_fresh(std::string text) {
        AtomId id = static_cast<AtomId>(texts_.size());
        texts_.push_back(text);
        index_.emplace(std::move(text), id);
        return id;
    }

    std::vector<std::string> texts_;
    std::unordered_map<std::string, AtomId> index_;
};

} // namespace hornet
