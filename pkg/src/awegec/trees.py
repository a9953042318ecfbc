"""Bracketed constituency trees: parsing, serialization, traversal.

Trees arrive from an external parser as one parenthesized expression per
line, e.g. ``(S (NP (DT the) (NN cat)) (VP (VBD sat)))``. Error positions
are 1-based character positions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyNode, UnbalancedParens


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple["ParseTree", ...] = ()
    leaf_token: str | None = None

    def __post_init__(self):
        if bool(self.children) == (self.leaf_token is not None):
            raise ValueError("node needs either children or a leaf token, not both")

    @property
    def is_preterminal(self) -> bool:
        return self.leaf_token is not None

    def leaves(self) -> list[str]:
        if self.leaf_token is not None:
            return [self.leaf_token]
        out: list[str] = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def serialize(self) -> str:
        if self.leaf_token is not None:
            return f"({self.label} {self.leaf_token})"
        inner = " ".join(child.serialize() for child in self.children)
        return f"({self.label} {inner})"


def parse_tree(bracketed: str) -> ParseTree:
    """Parse one bracketed tree.

    Raises :class:`UnbalancedParens` or :class:`EmptyNode` with the 1-based
    character position of the problem.
    """
    tree, pos = _parse_node(bracketed, _skip_ws(bracketed, 0))
    pos = _skip_ws(bracketed, pos)
    if pos != len(bracketed):
        raise UnbalancedParens(pos + 1)
    return tree


def serialize_tree(tree: ParseTree) -> str:
    return tree.serialize()


def _skip_ws(s: str, i: int) -> int:
    while i < len(s) and s[i].isspace():
        i += 1
    return i


def _read_atom(s: str, i: int) -> tuple[str, int]:
    j = i
    while j < len(s) and not s[j].isspace() and s[j] not in "()":
        j += 1
    return s[i:j], j


def _parse_node(s: str, i: int) -> tuple[ParseTree, int]:
    if i >= len(s) or s[i] != "(":
        raise UnbalancedParens(i + 1)
    open_at = i
    i = _skip_ws(s, i + 1)
    label, i = _read_atom(s, i)
    if not label:
        raise EmptyNode(open_at + 1)
    children: list[ParseTree] = []
    leaf: str | None = None
    while True:
        i = _skip_ws(s, i)
        if i >= len(s):
            raise UnbalancedParens(i + 1)
        if s[i] == ")":
            i += 1
            break
        if s[i] == "(":
            if leaf is not None:
                raise EmptyNode(i + 1)
            child, i = _parse_node(s, i)
            children.append(child)
        else:
            atom, i = _read_atom(s, i)
            if children or leaf is not None:
                raise EmptyNode(open_at + 1)
            leaf = atom
    if leaf is None and not children:
        raise EmptyNode(open_at + 1)
    return ParseTree(label, tuple(children), leaf), i


def read_tree_file(contents: str) -> list[ParseTree]:
    """One bracketed tree per non-blank line, aligned 1:1 with a sentence file."""
    return [parse_tree(line) for line in contents.splitlines() if line.strip()]


def write_tree_file(trees) -> str:
    return "".join(tree.serialize() + "\n" for tree in trees)
