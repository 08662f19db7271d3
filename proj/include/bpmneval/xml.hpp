#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bpmneval::xml {

/// Thrown when the input is not well-formed XML. `offset` is the byte
/// position in the input where parsing failed.
class XmlError : public std::runtime_error {
public:
    XmlError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

struct Element {
    std::string name;  // qualified name as written, e.g. "bpmn:task"
    std::vector<std::pair<std::string, std::string>> attributes;  // (qname, decoded value)
    std::vector<Element> children;
    std::string text;  // concatenated character data

    // First attribute whose local name matches (xmlns declarations skipped).
    const std::string* attribute(std::string_view local) const;
};

// "bpmn:task" -> "task"; names without a prefix pass through.
std::string_view local_name(std::string_view qualified);

// Parses a complete document: optional prolog, one root element, trailing
// whitespace/comments/processing instructions only. Throws XmlError.
Element parse_document(std::string_view text);

struct DocumentSlice {
    Element root;
    std::size_t begin = 0;
    std::size_t end = 0;  // one past the root element's closing tag
};

// Parses one document starting at `pos`; trailing content is left alone.
DocumentSlice parse_document_at(std::string_view text, std::size_t pos);

}  // namespace bpmneval::xml
