"""Template-based translation of recurring researcher questions into Cypher ASTs.

Three deterministic templates cover the supported question shapes:

    T1  which papers mention <event terms> ... in <location>, in the
        sentences where the terms appear
    T2  which papers mention <model generation> and <teleconnection> in the
        context of the <region> <country>
    T3  which papers mention <teleconnection> in connection with locations
        in <country>

Slot values come from gazetteers built over the graph's entity names plus a
checked-in alias table (``alias<TAB>canonical`` lines). List-valued slots
are ordered by alias-table declaration order. A free-form external
translator (e.g. an LLM) can be registered as a plain ``text -> Cypher
text`` callable; its output is always re-parsed before execution.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cypher.ast import (And, Compare, CompareOp, Literal, MatchClause,
                         NodePattern, Or, PathPattern, PropAccess, Query,
                         RelPattern, ReturnItem)
from .cypher.printer import pretty_print
from .store import Graph
from .values import PropertyValue

ExternalTranslator = Callable[[str], str]

_REGION_QUALIFIERS = ("Southeast", "Northeast", "Southwest", "Northwest",
                      "Midwest", "Central")

_COUNTRIES = {
    "United States": {
        "short": "US",
        "names": ("USA", "United States of America"),
        "description": "United States",
    },
}


@dataclass(frozen=True)
class QueryTemplate:
    id: str
    description: str
    # all groups must hit; a group hits when any synonym occurs in the text
    triggers: Tuple[Tuple[str, ...], ...]
    slot_names: Tuple[str, ...]


@dataclass(frozen=True)
class Translation:
    template_id: str
    slots: Dict[str, object]
    ast: Query
    text: str


@dataclass(frozen=True)
class NoMatch:
    reasons: Tuple[str, ...]


def load_aliases(path=None) -> List[Tuple[str, str]]:
    """Alias table as (alias, canonical) pairs in declaration order."""
    if path is None:
        text = resources.files("climakg.data").joinpath("aliases.tsv").read_text("utf-8")
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    pairs = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        alias, sep, canonical = line.partition("\t")
        if sep:
            pairs.append((alias.strip(), canonical.strip()))
    return pairs


class Gazetteer:
    """Phrase lookup over graph entity names plus the alias table."""

    def __init__(self, graph: Graph, aliases: Optional[Sequence[Tuple[str, str]]] = None):
        self.aliases = list(aliases if aliases is not None else load_aliases())
        self._names_by_label: Dict[str, List[str]] = {}
        in_graph = set()
        for node in graph.nodes:
            name = node.properties.get("Name")
            if name is None:
                continue
            for label in node.labels:
                bucket = self._names_by_label.setdefault(label, [])
                if name.value not in bucket:
                    bucket.append(name.value)
                in_graph.add(name.value)
        self._in_graph = in_graph

    def find_entities(self, text: str, labels: Sequence[str]) -> List[str]:
        """Canonical entity names present in the text, longest match first."""
        hits = []
        for label in labels:
            for name in self._names_by_label.get(label, []):
                if _phrase_in(name, text):
                    hits.append(name)
        for alias, canonical in self.aliases:
            if canonical in self._in_graph and _phrase_in(alias, text):
                if any(canonical in self._names_by_label.get(l, []) for l in labels):
                    hits.append(canonical)
        seen = set()
        unique = [h for h in hits if not (h in seen or seen.add(h))]
        unique.sort(key=len, reverse=True)
        return unique

    def find_terms(self, text: str) -> List[str]:
        """Alias canonicals that are not graph entities (sentence terms),
        in alias-table declaration order."""
        terms = []
        for alias, canonical in self.aliases:
            if canonical in self._in_graph:
                continue
            if canonical not in terms and _phrase_in(alias, text):
                terms.append(canonical)
        return terms


def _phrase_in(phrase: str, text: str) -> bool:
    pattern = re.escape(phrase)
    if phrase[:1].isalnum():
        pattern = r"\b" + pattern
    if phrase[-1:].isalnum():
        pattern = pattern + r"\b"
    return re.search(pattern, text, re.IGNORECASE) is not None


# -- templates ----------------------------------------------------------------

def builtin_templates() -> List[QueryTemplate]:
    return [
        QueryTemplate(
            id="T1",
            description="papers mentioning event terms in sentences, tied to a location",
            triggers=(("papers", "paper"), ("mention",), ("sentences", "sentence")),
            slot_names=("location", "sentence_terms"),
        ),
        QueryTemplate(
            id="T2",
            description="papers at the intersection of a model generation, a "
                        "teleconnection and a region",
            triggers=(("papers", "paper"), ("mention",), ("cmip",)),
            slot_names=("model_substring", "teleconnection", "region_substring",
                        "country_substring"),
        ),
        QueryTemplate(
            id="T3",
            description="papers mentioning a teleconnection pattern targeting "
                        "locations in a country",
            triggers=(("papers", "paper"), ("mention",), ("pattern",),
                      ("locations", "location")),
            slot_names=("teleconnection", "country_names", "country_description"),
        ),
    ]


def translate(text: str, templates: Sequence[QueryTemplate], graph: Graph,
              aliases: Optional[Sequence[Tuple[str, str]]] = None):
    """Translate a question via the first template whose triggers and slots
    all resolve; returns Translation or NoMatch."""
    gazetteer = Gazetteer(graph, aliases)
    lowered = text.lower()
    reasons = []
    for template in templates:
        missing_group = None
        for group in template.triggers:
            if not any(word.lower() in lowered for word in group):
                missing_group = group
                break
        if missing_group is not None:
            reasons.append(f"{template.id}: no trigger from {list(missing_group)}")
            continue
        slots, missing_slot = _fill_slots(template, text, gazetteer)
        if missing_slot is not None:
            reasons.append(f"{template.id}: could not fill slot {missing_slot!r}")
            continue
        ast = _BUILDERS[template.id](slots)
        return Translation(template.id, slots, ast, pretty_print(ast))
    return NoMatch(tuple(reasons))


def _fill_slots(template: QueryTemplate, text: str, gz: Gazetteer):
    slots: Dict[str, object] = {}
    for name in template.slot_names:
        if name == "location":
            hits = gz.find_entities(text, ["Location"])
            if not hits:
                return slots, name
            slots[name] = hits[0]
        elif name == "sentence_terms":
            terms = gz.find_terms(text)
            if not terms:
                return slots, name
            slots[name] = terms
        elif name == "teleconnection":
            hits = gz.find_entities(text, ["Teleconnection"])
            if not hits:
                return slots, name
            slots[name] = hits[0]
        elif name == "model_substring":
            hits = gz.find_entities(text, ["Model", "Project"])
            if not hits:
                return slots, name
            # shortest hit = the generation substring (CMIP5 over CMIP5-ESM)
            slots[name] = min(hits, key=len)
        elif name == "region_substring":
            region = next((q for q in _REGION_QUALIFIERS
                           if re.search(r"\b" + q + r"\b", text, re.IGNORECASE)), None)
            if region is None:
                return slots, name
            slots[name] = region
        elif name == "country_substring":
            country = _find_country(text)
            if country is None:
                return slots, name
            slots[name] = country
        elif name == "country_names":
            country = _find_country(text)
            if country is None:
                return slots, name
            slots[name] = list(_COUNTRIES[country]["names"])
        elif name == "country_description":
            country = _find_country(text)
            if country is None:
                return slots, name
            slots[name] = _COUNTRIES[country]["description"]
        else:
            raise ValueError(f"unknown slot {name!r}")
    return slots, None


def _find_country(text: str) -> Optional[str]:
    for country in _COUNTRIES:
        if _phrase_in(country, text):
            return country
    return None


# -- AST builders (canonical variable names follow the conformance queries) ---

def _text(value: str) -> Literal:
    return Literal(PropertyValue.text(value))


def _mention(var: Optional[str] = None) -> RelPattern:
    return RelPattern("Mention", var)


def _build_t1(slots) -> Query:
    terms = slots["sentence_terms"]
    contains = tuple(Compare(PropAccess("m", "Mention_Sentence"),
                             CompareOp.CONTAINS, _text(term)) for term in terms)
    where = contains[0] if len(contains) == 1 else Or(contains)
    return Query(
        matches=(
            MatchClause((PathPattern(
                NodePattern("we", ("Weather_Event",)),
                ((RelPattern("TargetsLocation"),
                  NodePattern("l", ("Location",),
                              (("Name", PropertyValue.text(slots["location"])),))),),
            ),)),
            MatchClause((PathPattern(
                NodePattern("p", ("Paper",)),
                ((_mention("m"), NodePattern("we")),),
            ),), where=where),
        ),
        returns=(
            ReturnItem(PropAccess("p", "title"), "PaperTitle"),
            ReturnItem(PropAccess("l", "Name"), "Location"),
            ReturnItem(PropAccess("we", "Name"), "WeatherEvent"),
            ReturnItem(PropAccess("m", "Mention_Sentence"), "Context"),
        ),
    )


def _build_t2(slots) -> Query:
    country = slots["country_substring"]
    short = _COUNTRIES[country]["short"]
    return Query(
        matches=(
            MatchClause(
                (PathPattern(NodePattern("p", ("Paper",)),
                             ((_mention(), NodePattern("mod", ("Model", "Project"))),)),),
                where=Compare(PropAccess("mod", "Name"), CompareOp.CONTAINS,
                              _text(slots["model_substring"])),
            ),
            MatchClause((PathPattern(
                NodePattern("p"),
                ((_mention(), NodePattern("tel", ("Teleconnection",),
                                          (("Name", PropertyValue.text(slots["teleconnection"])),))),),
            ),)),
            MatchClause(
                (PathPattern(NodePattern("p"),
                             ((_mention(), NodePattern("loc", ("Location",))),)),),
                where=And((
                    Compare(PropAccess("loc", "Name"), CompareOp.CONTAINS,
                            _text(slots["region_substring"])),
                    Or((
                        Compare(PropAccess("loc", "wikidata_description"),
                                CompareOp.CONTAINS, _text(country)),
                        Compare(PropAccess("loc", "Name"), CompareOp.CONTAINS,
                                _text(short)),
                    )),
                )),
            ),
        ),
        returns=(
            ReturnItem(PropAccess("p", "title"), "PaperTitle"),
            ReturnItem(PropAccess("mod", "Name"), "ModelProject"),
            ReturnItem(PropAccess("tel", "Name"), "Teleconnection"),
            ReturnItem(PropAccess("loc", "Name"), "Region"),
        ),
    )


def _build_t3(slots) -> Query:
    return Query(
        matches=(
            MatchClause((PathPattern(
                NodePattern("p", ("Paper",)),
                ((_mention(), NodePattern("t", ("Teleconnection",),
                                          (("Name", PropertyValue.text(slots["teleconnection"])),))),),
            ),)),
            MatchClause((PathPattern(
                NodePattern("t"),
                ((RelPattern("TargetsLocation"), NodePattern("l", ("Location",))),),
            ),)),
            MatchClause(
                (PathPattern(NodePattern("p"), ((_mention(), NodePattern("l")),)),),
                where=Or((
                    Compare(PropAccess("l", "wikidata_description"),
                            CompareOp.CONTAINS, _text(slots["country_description"])),
                    Compare(PropAccess("l", "Name"), CompareOp.IN,
                            Literal(PropertyValue.text_list(slots["country_names"]))),
                )),
            ),
        ),
        returns=(
            ReturnItem(PropAccess("p", "title"), "PaperTitle"),
            ReturnItem(PropAccess("t", "Name"), "TeleconnectionPattern"),
            ReturnItem(PropAccess("l", "Name"), "Location"),
        ),
    )


_BUILDERS = {"T1": _build_t1, "T2": _build_t2, "T3": _build_t3}
