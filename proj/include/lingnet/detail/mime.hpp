#pragma once

// Just enough MIME to pull the first text/plain part out of a message.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "../unicode.hpp"

namespace lingnet::detail {

inline std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = char(std::tolower((unsigned char)c));
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace((unsigned char)s.front())) s.remove_prefix(1);
    while (!s.empty() && std::isspace((unsigned char)s.back())) s.remove_suffix(1);
    return s;
}

struct Headers {
    std::vector<std::pair<std::string, std::string>> fields;  // lowercased name, raw value

    const std::string* get(std::string_view name) const {
        for (const auto& [k, v] : fields)
            if (k == name) return &v;
        return nullptr;
    }
};

struct Part {
    Headers headers;
    std::string body;
};

// Splits "headers \n\n body". Folded header lines are joined.
inline Part split_part(std::string_view text) {
    Part p;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        std::size_t next = nl == std::string_view::npos ? text.size() : nl + 1;
        if (line.empty()) {
            pos = next;
            p.body = std::string(text.substr(pos));
            return p;
        }
        if ((line[0] == ' ' || line[0] == '\t') && !p.headers.fields.empty()) {
            p.headers.fields.back().second += "\n";
            p.headers.fields.back().second += line;
        } else {
            std::size_t colon = line.find(':');
            if (colon == std::string_view::npos || colon == 0) {
                p.body = std::string(text.substr(pos));
                return p;
            }
            p.headers.fields.emplace_back(ascii_lower(trim(line.substr(0, colon))),
                                          std::string(line.substr(colon + 1)));
        }
        pos = next;
    }
    return p;
}

struct ContentType {
    std::string type = "text/plain";
    std::vector<std::pair<std::string, std::string>> params;

    std::string param(std::string_view k) const {
        for (const auto& [n, v] : params)
            if (n == k) return v;
        return {};
    }
};

inline ContentType parse_content_type(const std::string* raw) {
    ContentType ct;
    if (!raw) return ct;
    std::string_view s = *raw;
    std::size_t semi = s.find(';');
    std::string t = ascii_lower(trim(s.substr(0, semi)));
    if (t.find('/') != std::string::npos) ct.type = t;
    while (semi != std::string_view::npos) {
        s = s.substr(semi + 1);
        std::size_t eq = s.find('=');
        if (eq == std::string_view::npos) break;
        std::string key = ascii_lower(trim(s.substr(0, eq)));
        std::string_view rest = trim(s.substr(eq + 1));
        std::string val;
        if (!rest.empty() && rest[0] == '"') {
            std::size_t i = 1;
            for (; i < rest.size() && rest[i] != '"'; ++i) {
                if (rest[i] == '\\' && i + 1 < rest.size()) ++i;
                val += rest[i];
            }
            rest = rest.substr(std::min(i + 1, rest.size()));
            semi = rest.find(';');
            s = rest;
        } else {
            semi = rest.find(';');
            val = std::string(trim(rest.substr(0, semi)));
            s = rest;
        }
        ct.params.emplace_back(key, val);
    }
    return ct;
}

inline int hexval(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

inline std::string decode_qp(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '=') {
            out += s[i];
            continue;
        }
        if (i + 1 < s.size() && s[i + 1] == '\n') { ++i; continue; }
        if (i + 2 < s.size() && s[i + 1] == '\r' && s[i + 2] == '\n') { i += 2; continue; }
        int a = i + 1 < s.size() ? hexval(s[i + 1]) : -1;
        int b = i + 2 < s.size() ? hexval(s[i + 2]) : -1;
        if (a >= 0 && b >= 0) {
            out += char(a * 16 + b);
            i += 2;
        } else {
            out += '=';
        }
    }
    return out;
}

inline std::string decode_base64(std::string_view s) {
    std::string out;
    unsigned buf = 0;
    int bits = 0;
    for (char c : s) {
        int v;
        if (c >= 'A' && c <= 'Z') v = c - 'A';
        else if (c >= 'a' && c <= 'z') v = c - 'a' + 26;
        else if (c >= '0' && c <= '9') v = c - '0' + 52;
        else if (c == '+') v = 62;
        else if (c == '/') v = 63;
        else if (c == '=') break;
        else continue;
        buf = (buf << 6) | unsigned(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out += char((buf >> bits) & 0xFF);
        }
    }
    return out;
}

// Bytes in the given charset to UTF-8. Unknown charsets are read as UTF-8.
inline std::string to_utf8(std::string_view bytes, std::string charset, bool* lossy) {
    charset = ascii_lower(charset);
    if (charset == "iso-8859-1" || charset == "latin-1" || charset == "latin1" || charset == "iso8859-1") {
        std::string out;
        for (unsigned char c : bytes) uni::append(out, c);
        return out;
    }
    return uni::sanitize(bytes, lossy);
}

inline std::optional<std::string> first_plain(const Part& p, bool* lossy, int depth = 0) {
    ContentType ct = parse_content_type(p.headers.get("content-type"));
    if (ct.type.rfind("multipart/", 0) == 0) {
        std::string boundary = ct.param("boundary");
        if (boundary.empty() || depth > 16) return std::nullopt;
        std::string delim = "--" + boundary;
        std::vector<std::string> parts;
        std::string cur;
        bool inside = false;
        std::size_t pos = 0;
        const std::string& b = p.body;
        while (pos <= b.size()) {
            std::size_t nl = b.find('\n', pos);
            std::string_view line(b.data() + pos, (nl == std::string::npos ? b.size() : nl) - pos);
            std::string_view t = line;
            while (!t.empty() && std::isspace((unsigned char)t.back())) t.remove_suffix(1);
            if (t == delim + "--") {
                if (inside) parts.push_back(cur);
                inside = false;
                break;
            }
            if (t == delim) {
                if (inside) parts.push_back(cur);
                cur.clear();
                inside = true;
            } else if (inside) {
                cur += line;
                cur += '\n';
            }
            if (nl == std::string::npos) break;
            pos = nl + 1;
        }
        if (inside) parts.push_back(cur);
        for (auto& raw : parts) {
            if (!raw.empty() && raw.back() == '\n') raw.pop_back();  // newline before the delimiter
            auto r = first_plain(split_part(raw), lossy, depth + 1);
            if (r) return r;
        }
        return std::nullopt;
    }
    if (ct.type != "text/plain") return std::nullopt;
    std::string cte;
    if (auto* h = p.headers.get("content-transfer-encoding")) cte = ascii_lower(trim(*h));
    std::string bytes;
    if (cte == "quoted-printable") bytes = decode_qp(p.body);
    else if (cte == "base64") bytes = decode_base64(p.body);
    else bytes = p.body;
    return to_utf8(bytes, ct.param("charset"), lossy);
}

}  // namespace lingnet::detail
