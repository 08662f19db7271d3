#include "bpmneval/xml.hpp"

#include <cctype>

namespace bpmneval::xml {

namespace {

bool is_name_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == ':' || c == '.' || c == '-' || c >= 0x80;
}

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

class Cursor {
public:
    Cursor(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ >= text_.size(); }

    char peek() const {
        if (at_end()) fail("unexpected end of input");
        return text_[pos_];
    }

    bool starts_with(std::string_view s) const {
        return text_.compare(pos_, s.size(), s) == 0;
    }

    void advance(std::size_t n = 1) { pos_ += n; }

    void expect(std::string_view s) {
        if (!starts_with(s)) fail("expected '" + std::string(s) + "'");
        pos_ += s.size();
    }

    void skip_space() {
        while (!at_end() && is_space(text_[pos_])) ++pos_;
    }

    void skip_until(std::string_view end_marker, const char* what) {
        auto at = text_.find(end_marker, pos_);
        if (at == std::string_view::npos) fail(std::string("unterminated ") + what);
        pos_ = at + end_marker.size();
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw XmlError(message, pos_);
    }

    std::string parse_name() {
        if (at_end() || !is_name_start(static_cast<unsigned char>(text_[pos_])))
            fail("expected a name");
        std::size_t start = pos_;
        while (!at_end() && is_name_char(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    // After a consumed '&'.
    void parse_reference(std::string& out) {
        if (starts_with("amp;")) { out.push_back('&'); advance(4); return; }
        if (starts_with("lt;")) { out.push_back('<'); advance(3); return; }
        if (starts_with("gt;")) { out.push_back('>'); advance(3); return; }
        if (starts_with("quot;")) { out.push_back('"'); advance(5); return; }
        if (starts_with("apos;")) { out.push_back('\''); advance(5); return; }
        if (starts_with("#")) {
            advance(1);
            int base = 10;
            if (!at_end() && (peek() == 'x' || peek() == 'X')) { base = 16; advance(1); }
            unsigned long cp = 0;
            std::size_t digits = 0;
            while (!at_end() && peek() != ';') {
                char c = peek();
                int d;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
                else fail("bad character reference");
                cp = cp * base + static_cast<unsigned long>(d);
                if (cp > 0x10FFFF) fail("character reference out of range");
                ++digits;
                advance(1);
            }
            if (digits == 0 || at_end()) fail("bad character reference");
            advance(1);  // ';'
            append_utf8(out, cp);
            return;
        }
        fail("unknown entity reference");
    }

    std::string parse_attribute_value() {
        char quote = peek();
        if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
        advance(1);
        std::string value;
        while (true) {
            if (at_end()) fail("unterminated attribute value");
            char c = peek();
            if (c == quote) { advance(1); return value; }
            if (c == '<') fail("'<' in attribute value");
            if (c == '&') { advance(1); parse_reference(value); continue; }
            value.push_back(c);
            advance(1);
        }
    }

    Element parse_element() {
        expect("<");
        Element element;
        element.name = parse_name();
        while (true) {
            skip_space();
            if (at_end()) fail("unterminated start tag");
            if (peek() == '/') {
                expect("/>");
                return element;
            }
            if (peek() == '>') {
                advance(1);
                parse_content(element);
                return element;
            }
            std::string attr_name = parse_name();
            for (const auto& [existing, _] : element.attributes)
                if (existing == attr_name) fail("duplicate attribute '" + attr_name + "'");
            skip_space();
            expect("=");
            skip_space();
            element.attributes.emplace_back(std::move(attr_name), parse_attribute_value());
        }
    }

    void parse_content(Element& element) {
        while (true) {
            if (at_end()) fail("missing closing tag for '" + element.name + "'");
            if (starts_with("</")) {
                advance(2);
                std::string close = parse_name();
                if (close != element.name)
                    fail("mismatched closing tag '" + close + "' for '" + element.name + "'");
                skip_space();
                expect(">");
                return;
            }
            if (starts_with("<!--")) { advance(4); skip_until("-->", "comment"); continue; }
            if (starts_with("<![CDATA[")) {
                advance(9);
                auto at = text_.find("]]>", pos_);
                if (at == std::string_view::npos) fail("unterminated CDATA section");
                element.text.append(text_.substr(pos_, at - pos_));
                pos_ = at + 3;
                continue;
            }
            if (starts_with("<?")) { advance(2); skip_until("?>", "processing instruction"); continue; }
            if (starts_with("<!")) fail("unsupported markup declaration");
            if (peek() == '<') { element.children.push_back(parse_element()); continue; }
            if (peek() == '&') { advance(1); parse_reference(element.text); continue; }
            element.text.push_back(peek());
            advance(1);
        }
    }

    // Prolog: optional XML declaration, comments, PIs, whitespace.
    void skip_prolog() {
        if (pos_ == 0 && starts_with("\xEF\xBB\xBF")) advance(3);
        skip_space();
        if (starts_with("<?xml")) { advance(5); skip_until("?>", "XML declaration"); }
        while (true) {
            skip_space();
            if (starts_with("<!--")) { advance(4); skip_until("-->", "comment"); continue; }
            if (starts_with("<?")) { advance(2); skip_until("?>", "processing instruction"); continue; }
            if (starts_with("<!")) fail("unsupported markup declaration");
            return;
        }
    }

    void skip_trailer() {
        while (true) {
            skip_space();
            if (at_end()) return;
            if (starts_with("<!--")) { advance(4); skip_until("-->", "comment"); continue; }
            if (starts_with("<?")) { advance(2); skip_until("?>", "processing instruction"); continue; }
            fail("trailing content after document root");
        }
    }

private:
    std::string_view text_;
    std::size_t pos_;
};

}  // namespace

const std::string* Element::attribute(std::string_view local) const {
    for (const auto& [qname, value] : attributes) {
        if (qname == "xmlns" || qname.rfind("xmlns:", 0) == 0) continue;
        if (local_name(qname) == local) return &value;
    }
    return nullptr;
}

std::string_view local_name(std::string_view qualified) {
    auto colon = qualified.rfind(':');
    return colon == std::string_view::npos ? qualified : qualified.substr(colon + 1);
}

Element parse_document(std::string_view text) {
    Cursor cursor(text, 0);
    cursor.skip_prolog();
    if (cursor.at_end() || cursor.peek() != '<') cursor.fail("expected document root element");
    Element root = cursor.parse_element();
    cursor.skip_trailer();
    return root;
}

DocumentSlice parse_document_at(std::string_view text, std::size_t pos) {
    Cursor cursor(text, pos);
    cursor.skip_prolog();
    if (cursor.at_end() || cursor.peek() != '<') cursor.fail("expected document root element");
    DocumentSlice slice;
    slice.begin = pos;
    slice.root = cursor.parse_element();
    slice.end = cursor.pos();
    return slice;
}

}  // namespace bpmneval::xml
