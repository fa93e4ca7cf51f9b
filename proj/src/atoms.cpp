#include "hornet/atoms.hpp"

namespace hornet {

std::string_view SymbolTable::trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

AtomId SymbolTable::intern(std::string_view text) {
    std::string_view t = trim(text);
    if (t.empty())
        throw std::invalid_argument("cannot intern empty atom text");
    auto it = index_.find(std::string(t));
    if (it != index_.end())
        return it->second;
    return intern_fresh(std::string(t));
}

} // namespace hornet
