#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rationeval {

// Base of all toolkit errors. The CLI maps the three subtrees to exit codes:
// UsageError -> 1, DataError -> 2, EndpointFailure -> 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UsageError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class EndpointFailure : public Error {
public:
    using Error::Error;
};

// ---- corpus ----

class MalformedXml : public DataError {
public:
    explicit MalformedXml(const std::string& detail) : DataError("MalformedXml: " + detail) {}
};

class SourceNotFound : public DataError {
public:
    explicit SourceNotFound(const std::string& path) : DataError("SourceNotFound: " + path) {}
};

class DuplicateDocId : public DataError {
public:
    explicit DuplicateDocId(const std::string& id) : DataError("DuplicateDocId: " + id), doc_id_(id) {}
    const std::string& doc_id() const { return doc_id_; }

private:
    std::string doc_id_;
};

// ---- assessments ----

class BadFieldCount : public DataError {
public:
    explicit BadFieldCount(const std::string& detail) : DataError("BadFieldCount: " + detail) {}
};

class BadToken : public DataError {
public:
    BadToken(std::size_t position, const std::string& detail)
        : DataError("BadToken at field " + std::to_string(position) + ": " + detail), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class SumMismatch : public DataError {
public:
    SumMismatch(std::uint64_t declared, std::uint64_t actual)
        : DataError("SumMismatch: declared rel_bytes " + std::to_string(declared) +
                    " != span-length sum " + std::to_string(actual)),
          declared_(declared),
          actual_(actual) {}
    std::uint64_t declared() const { return declared_; }
    std::uint64_t actual() const { return actual_; }

private:
    std::uint64_t declared_;
    std::uint64_t actual_;
};

class DuplicateJudgment : public DataError {
public:
    DuplicateJudgment(const std::string& topic_id, const std::string& doc_id)
        : DataError("DuplicateJudgment: (" + topic_id + ", " + doc_id + ")") {}
};

class BadTopicFile : public DataError {
public:
    explicit BadTopicFile(const std::string& detail) : DataError("BadTopicFile: " + detail) {}
};

// ---- runs ----

class BadRunLine : public DataError {
public:
    BadRunLine(std::size_t line_no, const std::string& detail)
        : DataError("BadRunLine at line " + std::to_string(line_no) + ": " + detail), line_no_(line_no) {}
    std::size_t line_no() const { return line_no_; }

private:
    std::size_t line_no_;
};

class DuplicateDocInRun : public DataError {
public:
    DuplicateDocInRun(const std::string& topic_id, const std::string& doc_id)
        : DataError("DuplicateDocInRun: (" + topic_id + ", " + doc_id + ")") {}
};

class UnknownTopic : public DataError {
public:
    explicit UnknownTopic(const std::string& topic_id) : DataError("UnknownTopic: " + topic_id) {}
};

// ---- prompting ----

class InsufficientExemplars : public DataError {
public:
    explicit InsufficientExemplars(const std::string& detail)
        : DataError("InsufficientExemplars: " + detail) {}
};

// ---- llm gateway ----

class UnknownPreset : public UsageError {
public:
    explicit UnknownPreset(const std::string& name) : UsageError("UnknownPreset: " + name) {}
};

class EndpointError : public EndpointFailure {
public:
    EndpointError(int status, const std::string& body)
        : EndpointFailure("EndpointError: status " + std::to_string(status) + ": " + body),
          status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

class TimeoutError : public EndpointFailure {
public:
    explicit TimeoutError(const std::string& detail) : EndpointFailure("Timeout: " + detail) {}
};

class ReplayMiss : public DataError {
public:
    explicit ReplayMiss(const std::string& hash)
        : DataError("ReplayMiss: no transcript for prompt hash " + hash), prompt_hash_(hash) {}
    const std::string& prompt_hash() const { return prompt_hash_; }

private:
    std::string prompt_hash_;
};

class UnparseableVerdict : public DataError {
public:
    explicit UnparseableVerdict(const std::string& raw)
        : DataError("UnparseableVerdict: no decisive token in: " + raw) {}
};

// ---- metrics ----

class EmptyGroundTruth : public DataError {
public:
    EmptyGroundTruth() : DataError("EmptyGroundTruth: pair has no highlighted bytes") {}
};

class NoTopics : public DataError {
public:
    NoTopics() : DataError("NoTopics: macro aggregate over empty score set") {}
};

class NoPairs : public DataError {
public:
    NoPairs() : DataError("NoPairs: micro aggregate over empty score set") {}
};

class KeyMismatch : public DataError {
public:
    explicit KeyMismatch(const std::string& detail) : DataError("KeyMismatch: " + detail) {}
};

// ---- cli ----

class MissingDocument : public DataError {
public:
    explicit MissingDocument(const std::string& doc_id)
        : DataError("MissingDocument: " + doc_id), doc_id_(doc_id) {}
    const std::string& doc_id() const { return doc_id_; }

private:
    std::string doc_id_;
};

}  // namespace rationeval
