"""Parser of problem files.

A problem file is a sequence of sections::

    FIELD q
    CATEGORY B
    OBJECTS X Y
    HOM X Y
    basis s0 degree 0
    basis t degree -1
    DIFF
    d t = s0 - s1
    UNIT X idX
    COMPOSE
    g . f = 2*h
    FUNCTOR F E -> B
    obj E0 -> X
    comp 1 (a) = s0
    TRANSFORM phi F -> G
    at E0 = [1]

Missing entries are zero.  Objects without a UNIT line get the first degree-0
basis element of their endomorphism space, or a fresh ``id_<object>`` label
when that space is undeclared; each such choice is logged as a warning.
Composites with units are filled in.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple
from src.ainf.functor import AInfFunctor
from src.dgcat.homotopy import H0Category, H0Class, homotopy_category
from src.dgcat.presentation import DgPresentation, LinearCategoryPresentation, is_linear
from src.dgcat.validator import validate_dg_category
from src.frontend.grammar import (Line, iter_lines, parse_coordinates, parse_int, parse_linear_combination,
                                  parse_tuple, require_label, split_assignment)
from src.graded.field import Field
from src.lift.problem import LiftProblem
from src.utils.errors import DgLiftError, FieldError, NotCocycle, ParseError, ShapeError
from src.utils.logger import get_logger

logger = get_logger("frontend.parser")

@dataclass
class _CategoryBlock:
    name: str
    line: Line
    objects: List[str] = field(default_factory=list)
    homs: Dict[Tuple[str, str], Dict[int, List[str]]] = field(default_factory=dict)
    label_lines: Dict[str, Line] = field(default_factory=dict)
    differential: List[Tuple[Line, str, Dict[str, Any], int]] = field(default_factory=list)
    units: Dict[str, Tuple[Line, str]] = field(default_factory=dict)
    compose: List[Tuple[Line, Tuple[str, str], Dict[str, Any], int]] = field(default_factory=list)


@dataclass
class _FunctorBlock:
    name: str
    line: Line
    source: Optional[str]
    target: Optional[str]
    objects: Dict[str, Tuple[Line, str]] = field(default_factory=dict)
    components: List[Tuple[Line, Tuple[str, ...], str, int]] = field(default_factory=list)


@dataclass
class TransformBlock:
    """Unresolved TRANSFORM section: per object, coordinates or a combination."""

    name: str
    line: Line
    source: Optional[str]
    target: Optional[str]
    entries: Dict[str, Tuple[Line, str, int]] = field(default_factory=dict)


@dataclass
class Document:
    """Everything declared in a problem file."""

    field: Field
    categories: Dict[str, DgPresentation] = field(default_factory=dict)
    functors: Dict[str, AInfFunctor] = field(default_factory=dict)
    transforms: Dict[str, TransformBlock] = field(default_factory=dict)

    def category(self, name: Optional[str] = None) -> DgPresentation:
        if name is None:
            if not self.categories:
                raise ShapeError("the document declares no category")
            return next(iter(self.categories.values()))
        if name not in self.categories:
            raise ShapeError(f"unknown category '{name}'")
        return self.categories[name]

    def functor(self, name: str) -> AInfFunctor:
        if name not in self.functors:
            raise ShapeError(f"unknown functor '{name}'")
        return self.functors[name]


class ProblemParser:
    """Single-pass section parser; sections are resolved when they close."""

    def __init__(self, text: str, field_override: Optional[str] = None, validate: bool = True):
        self.lines = list(iter_lines(text))
        self.field_override = field_override
        self.validate = validate
        self.document: Optional[Document] = None
        self._field: Optional[Field] = None
        self._block: Any = None
        self._mode: Optional[str] = None
        self._hom: Optional[Tuple[str, str]] = None

    # ---- driver ---------------------------------------------------------------

    def parse(self) -> Document:
        for line in self.lines:
            self._dispatch(line)
        self._close_block()
        if self.document is None:
            self._start_document(None)
        logger.debug(f"parsed {len(self.document.categories)} categories, "
                     f"{len(self.document.functors)} functors, {len(self.document.transforms)} transforms")
        return self.document

    def _dispatch(self, line: Line) -> None:
        words = line.words()
        keyword = words[0]
        if keyword == "FIELD":
            if self.document is not None:
                raise ParseError(line.number, 1, "FIELD must come before every other section")
            if len(words) != 2:
                raise ParseError(line.number, 1, "expected FIELD q or FIELD f<p>")
            self._start_document(words[1], line)
            return
        if self.document is None:
            self._start_document(None)
        if keyword == "CATEGORY":
            self._close_block()
            if len(words) != 2:
                raise ParseError(line.number, 1, "expected CATEGORY <name>")
            name = require_label(words[1], line)
            if name in self.document.categories:
                raise ParseError(line.number, line.column_of(name, 8), f"category '{name}' declared twice")
            self._block = _CategoryBlock(name, line)
        elif keyword == "FUNCTOR":
            self._close_block()
            name, source, target = self._header(line, words, "FUNCTOR <name> [<source> -> <target>]")
            self._block = _FunctorBlock(name, line, source, target)
        elif keyword == "TRANSFORM":
            self._close_block()
            name, source, target = self._header(line, words, "TRANSFORM [<name>] [<F> -> <G>]", optional_name=True)
            self._block = TransformBlock(name, line, source, target)
        elif isinstance(self._block, _CategoryBlock):
            self._category_line(line, words)
        elif isinstance(self._block, _FunctorBlock):
            self._functor_line(line, words)
        elif isinstance(self._block, TransformBlock):
            self._transform_line(line, words)
        else:
            raise ParseError(line.number, 1, f"unexpected '{keyword}' outside a section")

    def _start_document(self, tag: Optional[str], line: Optional[Line] = None) -> None:
        chosen = self.field_override or tag or "q"
        try:
            self._field = Field(chosen)
        except FieldError as exc:
            if line is None or self.field_override:
                raise
            raise ParseError(line.number, line.column_of(tag), str(exc))
        self.document = Document(self._field)

    @staticmethod
    def _header(line: Line, words: List[str], usage: str,
                optional_name: bool = False) -> Tuple[str, Optional[str], Optional[str]]:
        rest = words[1:]
        if "->" in rest:
            arrow = rest.index("->")
            if arrow == 0 or arrow != len(rest) - 2:
                raise ParseError(line.number, line.column_of("->"), f"expected {usage}")
            names = rest[:arrow - 1]
            source, target = rest[arrow - 1], rest[arrow + 1]
        else:
            names, source, target = rest, None, None
        if len(names) > 1 or (not names and not optional_name):
            raise ParseError(line.number, 1, f"expected {usage}")
        name = require_label(names[0], line, 1) if names else words[0].lower()
        return name, source, target

    # ---- categories -----------------------------------------------------------

    def _category_line(self, line: Line, words: List[str]) -> None:
        block: _CategoryBlock = self._block
        keyword = words[0]
        if keyword == "OBJECTS":
            for word in words[1:]:
                obj = require_label(word, line, 7)
                if obj in block.objects:
                    raise ParseError(line.number, line.column_of(word, 7), f"object '{obj}' declared twice")
                block.objects.append(obj)
            self._mode = None
        elif keyword == "HOM":
            if len(words) != 3:
                raise ParseError(line.number, 1, "expected HOM <source> <target>")
            for word in words[1:]:
                if word not in block.objects:
                    raise ParseError(line.number, line.column_of(word, 3), f"unknown object '{word}'")
            self._hom = (words[1], words[2])
            block.homs.setdefault(self._hom, {})
            self._mode = "HOM"
        elif keyword in ("DIFF", "COMPOSE"):
            self._mode = keyword
        elif keyword == "UNIT":
            if len(words) != 3:
                raise ParseError(line.number, 1, "expected UNIT <object> <label>")
            if words[1] not in block.objects:
                raise ParseError(line.number, line.column_of(words[1], 4), f"unknown object '{words[1]}'")
            block.units[words[1]] = (line, require_label(words[2], line, 4))
            self._mode = None
        elif self._mode == "HOM" and keyword == "basis":
            if len(words) != 4 or words[2] != "degree":
                raise ParseError(line.number, 1, "expected basis <label> degree <j>")
            label = require_label(words[1], line, 5)
            if label in block.label_lines:
                raise ParseError(line.number, line.column_of(label, 5), f"basis label '{label}' declared twice")
            degree = parse_int(words[3], line, "degree")
            block.homs[self._hom].setdefault(degree, []).append(label)
            block.label_lines[label] = line
        elif self._mode == "DIFF" and keyword == "d":
            lhs, rhs, column = split_assignment(line)
            label = require_label(lhs.split()[1] if len(lhs.split()) == 2 else lhs, line, 1)
            block.differential.append((line, label, parse_linear_combination(rhs, self._field, line, column), column))
        elif self._mode == "COMPOSE":
            lhs, rhs, column = split_assignment(line)
            parts = [part.strip() for part in lhs.split(".")]
            if len(parts) != 2:
                raise ParseError(line.number, 1, "expected <g> . <f> = <combination>")
            pair = (require_label(parts[0], line), require_label(parts[1], line))
            block.compose.append((line, pair, parse_linear_combination(rhs, self._field, line, column), column))
        else:
            raise ParseError(line.number, 1, f"unexpected '{keyword}' in CATEGORY {block.name}")

    def _close_category(self, block: _CategoryBlock) -> None:
        homs = {key: {degree: list(labels) for degree, labels in by_degree.items()}
                for key, by_degree in block.homs.items()}
        hom_of = {label: key for key, by_degree in homs.items() for labels in by_degree.values() for label in labels}
        degree_of = {label: degree for by_degree in homs.values() for degree, labels in by_degree.items()
                     for label in labels}

        def resolve(label: str, line: Line, column: int) -> None:
            if label not in hom_of:
                raise ParseError(line.number, line.column_of(label, column - 1), f"unknown basis label '{label}'")

        units = {}
        for obj in block.objects:
            if obj in block.units:
                line, label = block.units[obj]
                resolve(label, line, 1)
                units[obj] = label
                continue
            candidates = homs.get((obj, obj), {}).get(0, [])
            if candidates:
                logger.warning(f"{block.name}: no UNIT line for {obj}, using '{candidates[0]}'")
                units[obj] = candidates[0]
            else:
                label = f"id_{obj}"
                if label in hom_of:
                    raise ParseError(block.line.number, 1, f"cannot create unit '{label}': label already used")
                homs.setdefault((obj, obj), {}).setdefault(0, []).insert(0, label)
                hom_of[label], degree_of[label] = (obj, obj), 0
                logger.warning(f"{block.name}: no UNIT line for {obj}, creating '{label}'")
                units[obj] = label

        differential = {}
        for line, label, combination, column in block.differential:
            resolve(label, line, 1)
            for image in combination:
                resolve(image, line, column)
                if hom_of[image] != hom_of[label]:
                    raise ParseError(line.number, line.column_of(image, column - 1),
                                     f"d {label} contains '{image}' outside {hom_of[label]}")
            differential[label] = combination

        compose = {}
        for line, (g, f), combination, column in block.compose:
            resolve(g, line, 1)
            resolve(f, line, 1)
            if hom_of[g][0] != hom_of[f][1]:
                raise ParseError(line.number, line.column_of(g), f"{g} . {f} is not composable")
            for image in combination:
                resolve(image, line, column)
                if hom_of[image] != (hom_of[f][0], hom_of[g][1]):
                    raise ParseError(line.number, line.column_of(image, column - 1),
                                     f"{g} . {f} contains '{image}' outside {(hom_of[f][0], hom_of[g][1])}")
            compose[(g, f)] = combination

        compose = DgPresentation.unit_composites(homs, units, compose)
        try:
            presentation = DgPresentation(block.name, self._field, block.objects, homs, differential, units, compose)
        except ShapeError as exc:
            raise ParseError(block.line.number, 1, str(exc))
        if self.validate:
            validate_dg_category(presentation).raise_first()
        if is_linear(presentation):
            presentation = LinearCategoryPresentation.from_presentation(presentation)
        self.document.categories[block.name] = presentation

    # ---- functors -------------------------------------------------------------

    def _functor_line(self, line: Line, words: List[str]) -> None:
        block: _FunctorBlock = self._block
        if words[0] == "obj":
            if len(words) != 4 or words[2] != "->":
                raise ParseError(line.number, 1, "expected obj <object> -> <object>")
            block.objects[words[1]] = (line, words[3])
        elif words[0] == "comp":
            lhs, rhs, column = split_assignment(line)
            head = lhs.split(None, 2)
            if len(head) != 3:
                raise ParseError(line.number, 1, "expected comp <d> (<f_d>, ..., <f_1>) = <combination>")
            length = parse_int(head[1], line, "component length")
            fs = parse_tuple(head[2], line, line.column_of(head[2], 4))
            if len(fs) != length:
                raise ParseError(line.number, line.column_of(head[1], 4),
                                 f"component length {length} does not match a tuple of {len(fs)}")
            block.components.append((line, fs, rhs, column))
        else:
            raise ParseError(line.number, 1, f"unexpected '{words[0]}' in FUNCTOR {block.name}")

    def _close_functor(self, block: _FunctorBlock) -> None:
        categories = list(self.document.categories)
        if len(categories) < 1:
            raise ParseError(block.line.number, 1, "FUNCTOR needs declared categories")
        source_name = block.source or categories[0]
        target_name = block.target or categories[-1]
        for name in (source_name, target_name):
            if name not in self.document.categories:
                raise ParseError(block.line.number, block.line.column_of(name), f"unknown category '{name}'")
        if block.name in self.document.functors:
            raise ParseError(block.line.number, 1, f"functor '{block.name}' declared twice")
        source = self.document.categories[source_name]
        target = self.document.categories[target_name]

        object_map = {}
        for obj, (line, image) in block.objects.items():
            if obj not in source.objects:
                raise ParseError(line.number, line.column_of(obj, 3), f"unknown object '{obj}' of {source.name}")
            if image not in target.objects:
                raise ParseError(line.number, line.column_of(image, 3), f"unknown object '{image}' of {target.name}")
            object_map[obj] = image
        for obj in source.objects:
            if obj not in object_map:
                raise ParseError(block.line.number, 1, f"{block.name}: object '{obj}' is not mapped")

        components = {}
        for line, fs, rhs, column in block.components:
            for label in fs:
                if not source.has_label(label):
                    raise ParseError(line.number, line.column_of(label, 4), f"unknown basis label '{label}'")
            combination = parse_linear_combination(rhs, self._field, line, column)
            x0, xd = source.hom_of(fs[-1])[0], source.hom_of(fs[0])[1]
            try:
                components[fs] = target.element(object_map[x0], object_map[xd], combination)
            except ShapeError as exc:
                raise ParseError(line.number, column, str(exc))
        try:
            self.document.functors[block.name] = AInfFunctor(block.name, source, target, object_map, components)
        except DgLiftError as exc:
            raise ParseError(block.line.number, 1, str(exc))

    # ---- transformations ------------------------------------------------------

    def _transform_line(self, line: Line, words: List[str]) -> None:
        block: TransformBlock = self._block
        if words[0] != "at":
            raise ParseError(line.number, 1, f"unexpected '{words[0]}' in TRANSFORM")
        lhs, rhs, column = split_assignment(line)
        head = lhs.split()
        if len(head) != 2:
            raise ParseError(line.number, 1, "expected at <object> = <class>")
        block.entries[head[1]] = (line, rhs, column)

    def _close_transform(self, block: TransformBlock) -> None:
        functors = list(self.document.functors)
        if block.source is None and len(functors) < 2:
            raise ParseError(block.line.number, 1, "TRANSFORM needs two declared functors")
        block.source = block.source or functors[0]
        block.target = block.target or functors[1]
        for name in (block.source, block.target):
            if name not in self.document.functors:
                raise ParseError(block.line.number, block.line.column_of(name), f"unknown functor '{name}'")
        self.document.transforms[block.name] = block

    def _close_block(self) -> None:
        block, self._block, self._mode, self._hom = self._block, None, None, None
        if isinstance(block, _CategoryBlock):
            self._close_category(block)
        elif isinstance(block, _FunctorBlock):
            self._close_functor(block)
        elif isinstance(block, TransformBlock):
            self._close_transform(block)


def parse_document(text: str, field_override: Optional[str] = None, validate: bool = True) -> Document:
    """Parse a whole problem file.

    Args:
        text: Document text
        field_override: Field tag replacing the FIELD line
        validate: Check the dg axioms of every category as it closes

    Raises:
        ParseError: On syntax errors and unresolved references
        ValidationError: If a category violates a dg axiom
    """
    return ProblemParser(text, field_override, validate).parse()


def parse_presentation(text: str, name: Optional[str] = None,
                       field_override: Optional[str] = None) -> DgPresentation:
    """The named (default: first) category of a document."""
    document = parse_document(text, field_override)
    try:
        return document.category(name)
    except ShapeError as exc:
        raise ParseError(1, 1, str(exc))


def resolve_transform(document: Document, block: TransformBlock, problem_h0: H0Category) -> Dict[str, H0Class]:
    """Turn TRANSFORM entries into H0 classes of B(F E, G E).

    ``problem_h0`` is the H0 category of the target of the functors.
    """
    F, G = document.functor(block.source), document.functor(block.target)
    B, field_ = F.target, document.field
    classes = {}
    for obj in F.source.objects:
        if obj not in block.entries:
            raise ParseError(block.line.number, 1, f"{block.name}: no class given at '{obj}'")
        line, rhs, column = block.entries[obj]
        src, tgt = F.on_object(obj), G.on_object(obj)
        if rhs.strip().startswith("["):
            coords = parse_coordinates(rhs, field_, line, column)
            if len(coords) != problem_h0.dim(src, tgt):
                raise ParseError(line.number, column,
                                 f"H0({src},{tgt}) has dimension {problem_h0.dim(src, tgt)}, got {len(coords)} coordinates")
            classes[obj] = problem_h0.make_class(src, tgt, coords)
            continue
        combination = parse_linear_combination(rhs, field_, line, column)
        try:
            element = B.element(src, tgt, combination)
            classes[obj] = problem_h0.class_of(element)
        except (ShapeError, NotCocycle) as exc:
            raise ParseError(line.number, column, f"value at '{obj}' is not a degree-0 cocycle: {exc}")
    for obj in block.entries:
        if obj not in F.source.objects:
            line = block.entries[obj][0]
            raise ParseError(line.number, line.column_of(obj), f"unknown object '{obj}'")
    return classes


def parse_problem(text: str, field_override: Optional[str] = None, name: str = "problem",
                  transform: Optional[str] = None) -> LiftProblem:
    """Parse a document into a validated lifting problem.

    Raises:
        ParseError: On syntax errors or a missing TRANSFORM section
        ValidationError, NotLinearCategory, NaturalityFails: From problem validation
    """
    document = parse_document(text, field_override)
    if not document.transforms:
        raise ParseError(1, 1, "the document has no TRANSFORM section")
    block = document.transforms[transform] if transform else next(iter(document.transforms.values()))
    F, G = document.functor(block.source), document.functor(block.target)
    phi_bar = resolve_transform(document, block, homotopy_category(F.target))
    return LiftProblem(F.source, F.target, F, G, phi_bar, name=name)
