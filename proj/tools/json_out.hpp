#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "bilem/types.hpp"

// Minimal ordered JSON emitter: insertion order is preserved and every
// floating value prints with %.17g, so identical runs produce identical
// bytes.  Infinities serialize as the string "inf".
namespace jout {

inline std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(v)) return "\"nan\"";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string num(const bilem::ExtendedReal& v) {
    return v.is_infinite() ? "\"inf\"" : num(v.value());
}

inline std::string str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

inline std::string boolean(bool b) { return b ? "true" : "false"; }

class Object;

class Array {
public:
    void push_raw(std::string v) { items_.push_back(std::move(v)); }
    void push(double v) { items_.push_back(num(v)); }
    std::string dump() const {
        std::string out = "[";
        for (std::size_t i = 0; i < items_.size(); ++i) {
            if (i) out += ',';
            out += items_[i];
        }
        return out + "]";
    }

private:
    std::vector<std::string> items_;
};

class Object {
public:
    Object& field(const std::string& k, double v) { return raw(k, num(v)); }
    Object& field(const std::string& k, int v) { return raw(k, std::to_string(v)); }
    Object& field(const std::string& k, std::size_t v) { return raw(k, std::to_string(v)); }
    Object& field(const std::string& k, bool v) { return raw(k, boolean(v)); }
    Object& field(const std::string& k, const std::string& v) { return raw(k, str(v)); }
    Object& field(const std::string& k, const char* v) { return raw(k, str(v)); }
    Object& field(const std::string& k, const bilem::ExtendedReal& v) { return raw(k, num(v)); }
    Object& field(const std::string& k, const Array& v) { return raw(k, v.dump()); }
    Object& field(const std::string& k, const Object& v) { return raw(k, v.dump()); }
    Object& raw(const std::string& k, std::string v) {
        keys_.push_back(k);
        vals_.push_back(std::move(v));
        return *this;
    }
    std::string dump() const {
        std::string out = "{";
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            if (i) out += ',';
            out += str(keys_[i]) + ":" + vals_[i];
        }
        return out + "}";
    }

private:
    std::vector<std::string> keys_, vals_;
};

}  // namespace jout
