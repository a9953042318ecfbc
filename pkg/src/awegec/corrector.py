"""Hypothesis correction backends.

Two routes produce a :class:`CorrectionResult`: a deterministic
rule+dictionary baseline, and an HTTP client speaking the external-model
wire protocol ({"sentences": [...]} in, {"corrections": [...]} out).
Edits are always recomputed locally from the returned text, never taken
from the backend, so downstream rendering sees one consistent notion of
an edit regardless of who produced the correction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import httpx

from .align import Edit, char_edit_distance, edits_between, is_punct_token
from .errors import BackendUnavailable, BadResponse, CorrectionTimeout, LengthMismatch
from .text import TokenizedSentence

RULES_BACKEND = "rules"
FALLBACK_BACKEND = "fallback-rules"


def _is_numeric(token: str) -> bool:
    return any(ch.isdigit() for ch in token)


@dataclass(frozen=True)
class RuleSet:
    """Ordered pattern rules plus a frequency dictionary.

    Rules are (pattern, replacement) token-sequence pairs applied in
    listed order, leftmost-first, non-overlapping, in a single pass.
    The dictionary maps lowercase word forms to corpus frequencies and
    drives the spelling pass.
    """

    rules: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] = ()
    dictionary: dict[str, int] = field(default_factory=dict)
    spell_distance: int = 1

    def __post_init__(self):
        for pattern, _ in self.rules:
            if not pattern:
                raise ValueError("rule patterns must be non-empty")
        for word in self.dictionary:
            if word != word.lower():
                raise ValueError(f"dictionary form {word!r} is not lowercase")
        if self.spell_distance < 1:
            raise ValueError("spell_distance must be >= 1")

    def known(self, token: str) -> bool:
        return token.lower() in self.dictionary

    @classmethod
    def from_json(cls, contents: str) -> "RuleSet":
        raw = json.loads(contents)
        rules = tuple(
            (tuple(pattern), tuple(replacement))
            for pattern, replacement in raw.get("rules", [])
        )
        dictionary = {w: int(c) for w, c in raw.get("dictionary", {}).items()}
        return cls(rules=rules, dictionary=dictionary,
                   spell_distance=int(raw.get("spell_distance", 1)))


@dataclass(frozen=True)
class CorrectionResult:
    source: TokenizedSentence
    corrected: TokenizedSentence
    edits: tuple[Edit, ...]
    backend: str


def _match_case(candidate: str, original: str) -> str:
    if original.isupper() and len(original) > 1:
        return candidate.upper()
    if original[:1].isupper():
        return candidate.capitalize()
    return candidate


def _spell_candidate(token: str, rules: RuleSet) -> str | None:
    """Best in-dictionary replacement within the configured distance,
    highest frequency first, ties broken lexicographically."""
    low = token.lower()
    best: tuple[int, str] | None = None
    for word, freq in rules.dictionary.items():
        if char_edit_distance(low, word) <= rules.spell_distance:
            if best is None or (-freq, word) < (-best[0], best[1]):
                best = (freq, word)
    if best is None:
        return None
    return _match_case(best[1], token)


def _apply_patterns(tokens: list[str], rules: RuleSet) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(tokens):
        for pattern, replacement in rules.rules:
            if tuple(tokens[i:i + len(pattern)]) == pattern:
                out.extend(replacement)
                i += len(pattern)
                break
        else:
            out.append(tokens[i])
            i += 1
    return out


def _skip_spelling(token: str, rules: RuleSet) -> bool:
    return (rules.known(token) or is_punct_token(token)
            or _is_numeric(token) or token.startswith("@"))


def correct_rules(src: TokenizedSentence, rules: RuleSet) -> CorrectionResult:
    """One leftmost-first pattern pass, then a spelling pass over tokens
    absent from the dictionary (punctuation, numbers, and '@'-prefixed
    placeholders exempt)."""
    tokens = _apply_patterns(list(src.tokens), rules)
    for i, tok in enumerate(tokens):
        if _skip_spelling(tok, rules):
            continue
        candidate = _spell_candidate(tok, rules)
        if candidate is not None:
            tokens[i] = candidate
    corrected = TokenizedSentence.from_tokens(tokens)
    return CorrectionResult(
        source=src, corrected=corrected,
        edits=tuple(edits_between(src, corrected, rules.dictionary)),
        backend=RULES_BACKEND,
    )


@dataclass(frozen=True)
class ExternalBackendConfig:
    endpoint: str
    auth_header: str | None = None
    auth_token: str | None = None
    batch_size: int = 32
    timeout_ms: int = 10_000
    backend_name: str = "external"

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.timeout_ms < 1:
            raise ValueError("timeout_ms must be >= 1")


def _post_batch(config: ExternalBackendConfig, sentences: list[str]) -> list[str]:
    headers = {}
    if config.auth_header and config.auth_token:
        headers[config.auth_header] = config.auth_token
    try:
        response = httpx.post(
            config.endpoint, json={"sentences": sentences},
            headers=headers, timeout=config.timeout_ms / 1000.0,
        )
        response.raise_for_status()
        payload = response.json()
    except httpx.TimeoutException as exc:
        raise CorrectionTimeout(config.timeout_ms) from exc
    except httpx.HTTPError as exc:
        raise BadResponse(f"backend request failed: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise BadResponse(f"backend returned invalid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "corrections" not in payload:
        raise BadResponse("response missing 'corrections' field")
    corrections = payload["corrections"]
    if not isinstance(corrections, list) or not all(
            isinstance(c, str) for c in corrections):
        raise BadResponse("'corrections' must be a list of strings")
    if len(corrections) != len(sentences):
        raise LengthMismatch(
            f"sent {len(sentences)} sentences, got {len(corrections)} corrections")
    return corrections


def correct_external(
    sentences: list[TokenizedSentence],
    config: ExternalBackendConfig,
    dictionary: dict[str, int] | None = None,
) -> list[CorrectionResult]:
    """Send sentences to an external backend in batches, re-tokenize the
    returned text, and recompute edits locally."""
    from .text import tokenize

    texts = [" ".join(s.tokens) for s in sentences]
    returned: list[str] = []
    for start in range(0, len(texts), config.batch_size):
        returned.extend(_post_batch(config, texts[start:start + config.batch_size]))
    results = []
    for src, text in zip(sentences, returned):
        corrected = tokenize(text)
        if not corrected.tokens:
            corrected = TokenizedSentence.from_tokens(src.tokens)
        results.append(CorrectionResult(
            source=src, corrected=corrected,
            edits=tuple(edits_between(src, corrected, dictionary or {})),
            backend=config.backend_name,
        ))
    return results


@dataclass(frozen=True)
class CorrectorConfig:
    backend: str = RULES_BACKEND
    rules: RuleSet = field(default_factory=RuleSet)
    external: ExternalBackendConfig | None = None
    fallback_to_rules: bool = True


def correct(
    sentences: list[TokenizedSentence], config: CorrectorConfig,
) -> list[CorrectionResult]:
    """Dispatch to the configured backend; on external failure with
    fallback enabled, return the rule baseline tagged "fallback-rules"."""
    if config.backend == RULES_BACKEND or config.external is None:
        return [correct_rules(s, config.rules) for s in sentences]
    try:
        return correct_external(sentences, config.external,
                                config.rules.dictionary)
    except (CorrectionTimeout, BadResponse, LengthMismatch) as exc:
        if not config.fallback_to_rules:
            raise BackendUnavailable(str(exc)) from exc
        results = [correct_rules(s, config.rules) for s in sentences]
        return [
            CorrectionResult(r.source, r.corrected, r.edits, FALLBACK_BACKEND)
            for r in results
        ]
