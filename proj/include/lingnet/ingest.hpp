#pragma once

// Mailing-list archives (mbox, JSON lines) into an immutable message store.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "detail/mime.hpp"
#include "detail/timeutil.hpp"
#include "error.hpp"
#include "unicode.hpp"

namespace lingnet {

struct RawMessage {
    std::string message_id;
    std::optional<std::string> in_reply_to;
    std::string author;
    std::int64_t sent_at = 0;  // seconds since the Unix epoch, UTC
    std::string body;

    bool operator==(const RawMessage&) const = default;
};

class MessageStore {
public:
    MessageStore() = default;

    const std::vector<RawMessage>& messages() const { return msgs_; }
    const std::set<std::string>& dangling_refs() const { return dangling_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    std::size_t size() const { return msgs_.size(); }
    bool empty() const { return msgs_.empty(); }

    const RawMessage* find(const std::string& id) const {
        auto it = by_id_.find(id);
        return it == by_id_.end() ? nullptr : &msgs_[it->second];
    }
    std::optional<std::size_t> position(const std::string& id) const {
        auto it = by_id_.find(id);
        if (it == by_id_.end()) return std::nullopt;
        return it->second;
    }
    bool is_root(const RawMessage& m) const { return !m.in_reply_to || !by_id_.count(*m.in_reply_to); }

    // Later duplicates of a Message-ID are dropped with a warning.
    static MessageStore build(std::vector<RawMessage> in, std::vector<std::string> warnings = {}) {
        MessageStore s;
        s.warnings_ = std::move(warnings);
        for (auto& m : in) {
            if (s.by_id_.count(m.message_id)) {
                s.warnings_.push_back("duplicate Message-ID dropped: " + m.message_id);
                continue;
            }
            s.by_id_.emplace(m.message_id, s.msgs_.size());
            s.msgs_.push_back(std::move(m));
        }
        for (const auto& m : s.msgs_)
            if (m.in_reply_to && !s.by_id_.count(*m.in_reply_to)) s.dangling_.insert(*m.in_reply_to);
        return s;
    }

    bool operator==(const MessageStore& o) const { return msgs_ == o.msgs_; }

private:
    std::vector<RawMessage> msgs_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::set<std::string> dangling_;
    std::vector<std::string> warnings_;
};

inline MessageStore truncate(const MessageStore& s, std::size_t limit) {
    std::size_t k = std::min(limit, s.size());
    std::vector<RawMessage> head(s.messages().begin(), s.messages().begin() + k);
    return MessageStore::build(std::move(head), s.warnings());
}

// "Name <A@B.org>" / "a@b.org (Name)" / "<a@b.org>" -> "a@b.org"
inline std::string normalize_author(std::string_view raw) {
    raw = detail::trim(raw);
    std::string_view a;
    std::size_t lt = raw.rfind('<');
    std::size_t gt = lt == std::string_view::npos ? lt : raw.find('>', lt);
    if (gt != std::string_view::npos) {
        a = raw.substr(lt + 1, gt - lt - 1);
    } else {
        std::size_t i = 0;
        while (i < raw.size() && a.empty()) {
            while (i < raw.size() && std::isspace((unsigned char)raw[i])) ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace((unsigned char)raw[j])) ++j;
            std::string_view tok = raw.substr(i, j - i);
            if (tok.find('@') != std::string_view::npos) a = tok;
            i = j;
        }
        if (a.empty()) a = raw;
    }
    return uni::lower_utf8(detail::trim(a));
}

namespace detail {

struct Draft {
    RawMessage msg;
    std::optional<std::int64_t> date;
};

inline std::string strip_trailing_newlines(std::string s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!(s[i] == '\r' && i + 1 < s.size() && s[i + 1] == '\n')) out += s[i];
    while (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

// Dedupe first, then give undated messages the previous kept timestamp.
inline MessageStore finish(std::vector<Draft> drafts, std::vector<std::string> warnings) {
    std::set<std::string> seen;
    std::vector<RawMessage> out;
    std::int64_t prev = 0;
    for (auto& d : drafts) {
        if (!seen.insert(d.msg.message_id).second) {
            warnings.push_back("duplicate Message-ID dropped: " + d.msg.message_id);
            continue;
        }
        if (!d.date) {
            warnings.push_back("unparseable date, using previous timestamp: " + d.msg.message_id);
            d.date = prev;
        }
        prev = *d.date;
        d.msg.sent_at = prev;
        d.msg.body = strip_trailing_newlines(std::move(d.msg.body));
        out.push_back(std::move(d.msg));
    }
    return MessageStore::build(std::move(out), std::move(warnings));
}

inline std::string read_all(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::optional<std::string> first_msgid(std::string_view v) {
    v = trim(v);
    if (v.empty()) return std::nullopt;
    std::size_t lt = v.find('<');
    if (lt != std::string_view::npos) {
        std::size_t gt = v.find('>', lt);
        if (gt != std::string_view::npos) return std::string(v.substr(lt, gt - lt + 1));
    }
    return std::string(v);
}

inline bool is_from_escape(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && line[i] == '>') ++i;
    return i > 0 && line.substr(i).rfind("From ", 0) == 0;
}

}  // namespace detail

inline MessageStore parse_mbox(std::string_view data) {
    std::string text;
    text.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        if (!(data[i] == '\r' && i + 1 < data.size() && data[i + 1] == '\n')) text += data[i];

    std::vector<std::string> chunks;
    bool started = false;
    bool content = false;
    std::string cur;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::size_t end = nl == std::string::npos ? text.size() : nl;
        std::string_view line(text.data() + pos, end - pos);
        if (line.rfind("From ", 0) == 0) {
            if (started) chunks.push_back(std::move(cur));
            cur.clear();
            started = true;
        } else if (started) {
            if (detail::is_from_escape(line)) line.remove_prefix(1);
            cur += line;
            cur += '\n';
        } else if (!detail::trim(line).empty()) {
            content = true;
        }
        pos = end + 1;
    }
    if (started) chunks.push_back(std::move(cur));
    if (!started && content) throw MalformedArchive("no \"From \" separator in mbox input");

    std::vector<detail::Draft> drafts;
    std::vector<std::string> warnings;
    for (std::size_t k = 0; k < chunks.size(); ++k) {
        if (!chunks[k].empty()) chunks[k].pop_back();  // the join newline
        detail::Part part = detail::split_part(chunks[k]);
        const std::string* id = part.headers.get("message-id");
        const std::string* from = part.headers.get("from");
        if (!id || detail::trim(*id).empty())
            throw MalformedArchive("mbox entry " + std::to_string(k + 1) + " has no Message-ID");
        if (!from || normalize_author(*from).empty())
            throw MalformedArchive("mbox entry " + std::to_string(k + 1) + " has no From");
        detail::Draft d;
        d.msg.message_id = std::string(detail::trim(*id));
        if (auto* irt = part.headers.get("in-reply-to")) d.msg.in_reply_to = detail::first_msgid(*irt);
        d.msg.author = normalize_author(*from);
        if (auto* date = part.headers.get("date")) d.date = detail::parse_rfc2822(*date);
        bool lossy = false;
        d.msg.body = detail::first_plain(part, &lossy).value_or("");
        if (lossy) warnings.push_back("invalid UTF-8 replaced in " + d.msg.message_id);
        drafts.push_back(std::move(d));
    }
    return detail::finish(std::move(drafts), std::move(warnings));
}

inline MessageStore parse_mbox(std::istream& in) { return parse_mbox(detail::read_all(in)); }

inline MessageStore parse_jsonl(std::string_view data) {
    std::vector<detail::Draft> drafts;
    std::vector<std::string> warnings;
    std::size_t line_no = 0, pos = 0;
    while (pos < data.size()) {
        std::size_t nl = data.find('\n', pos);
        std::size_t end = nl == std::string_view::npos ? data.size() : nl;
        std::string_view line = data.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (detail::trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception&) {
            throw MalformedLine(line_no);
        }
        if (!j.is_object()) throw MalformedLine(line_no);
        for (const char* k : {"id", "author", "date", "body"})
            if (!j.contains(k)) throw MissingField(line_no, k);
        auto str = [&](const char* k) {
            if (!j[k].is_string()) throw MalformedLine(line_no);
            return j[k].get<std::string>();
        };
        detail::Draft d;
        d.msg.message_id = str("id");
        if (d.msg.message_id.empty()) throw MissingField(line_no, "id");
        if (j.contains("in_reply_to") && !j["in_reply_to"].is_null()) {
            std::string r = str("in_reply_to");
            if (!r.empty()) d.msg.in_reply_to = r;
        }
        d.msg.author = normalize_author(str("author"));
        if (d.msg.author.empty()) throw MissingField(line_no, "author");
        d.date = detail::parse_iso8601(str("date"));
        d.msg.body = str("body");
        drafts.push_back(std::move(d));
    }
    return detail::finish(std::move(drafts), std::move(warnings));
}

inline MessageStore parse_jsonl(std::istream& in) { return parse_jsonl(detail::read_all(in)); }

// Canonical dump: one object per line, keys sorted, UTC dates.
inline std::string write_jsonl(const MessageStore& s) {
    std::string out;
    for (const auto& m : s.messages()) {
        nlohmann::json j;
        j["id"] = m.message_id;
        j["in_reply_to"] = m.in_reply_to ? nlohmann::json(*m.in_reply_to) : nlohmann::json();
        j["author"] = m.author;
        j["date"] = detail::format_iso8601(m.sent_at);
        j["body"] = m.body;
        out += j.dump(-1, ' ', false) + "\n";
    }
    return out;
}

// mboxrd: body lines matching ^>*From  gain one '>'.
inline std::string write_mbox(const MessageStore& s) {
    std::string out;
    for (const auto& m : s.messages()) {
        out += "From " + m.author + " " + detail::format_rfc2822(m.sent_at) + "\n";
        out += "From: " + m.author + "\n";
        out += "Date: " + detail::format_rfc2822(m.sent_at) + "\n";
        out += "Message-ID: " + m.message_id + "\n";
        if (m.in_reply_to) out += "In-Reply-To: " + *m.in_reply_to + "\n";
        out += "MIME-Version: 1.0\nContent-Type: text/plain; charset=utf-8\nContent-Transfer-Encoding: 8bit\n\n";
        std::size_t pos = 0;
        while (pos <= m.body.size() && !m.body.empty()) {
            std::size_t nl = m.body.find('\n', pos);
            std::string_view line(m.body.data() + pos, (nl == std::string::npos ? m.body.size() : nl) - pos);
            if (line.rfind("From ", 0) == 0 || detail::is_from_escape(line)) out += '>';
            out += line;
            out += '\n';
            if (nl == std::string::npos) break;
            pos = nl + 1;
        }
        out += "\n";
    }
    return out;
}

}  // namespace lingnet
