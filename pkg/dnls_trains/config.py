"""Experiment configuration read from XML documents.

A configuration looks like::

    <experiment>
      <train variant="dnls1" b="0">
        <family d="-1 -2" h="1 1" M="8"/>
      </train>
      <grid L="256" N="2048" center="-56"/>
      <window T0="2" T1="6" Tmax="9"/>
      <step dt="0.01" dt_s="0.01" stride="10"/>
      <tolerances picard="1e-8" max_iters="30" gate="0.2"/>
      <residual samples="17" norm="h2"/>
    </experiment>

Instead of ``<family>`` the train may list ``<soliton omega= c= theta= x0=/>``
members, and dnls2 trains may add one ``<kink c0= theta0= x0=/>``.
"""
import copy
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Union

from lxml import etree

from dnls_trains import defaults
from dnls_trains.errors import InvalidArgumentError
from dnls_trains.profiles import (EquationVariant, KinkParams, SolitonParams,
                                  TrainSpec, scaled_family)
from dnls_trains.spectral import Grid

logger = logging.getLogger(__name__)

_REQUIRED = object()


def _element_name(element) -> str:
    return f"<{element.tag}>"


def _attribute(element, name: str, default=_REQUIRED) -> Optional[str]:
    value = element.get(name)
    if value is None:
        if default is _REQUIRED:
            raise InvalidArgumentError(
                f"Element {_element_name(element)} is missing the attribute "
                f"'{name}'."
            )
        return default
    return value


def _float(element, name: str, default=_REQUIRED) -> Optional[float]:
    value = _attribute(element, name, default)
    if value is None or isinstance(value, float):
        return value
    try:
        return float(value)
    except ValueError:
        raise InvalidArgumentError(
            f"Attribute '{name}' of {_element_name(element)} has to be a "
            f"number, got '{value}'."
        )


def _int(element, name: str, default=_REQUIRED) -> Optional[int]:
    value = _attribute(element, name, default)
    if value is None or isinstance(value, int):
        return value
    try:
        return int(value)
    except ValueError:
        raise InvalidArgumentError(
            f"Attribute '{name}' of {_element_name(element)} has to be an "
            f"integer, got '{value}'."
        )


def _floats(element, name: str) -> List[float]:
    value = _attribute(element, name)
    try:
        return [float(item) for item in value.replace(",", " ").split()]
    except ValueError:
        raise InvalidArgumentError(
            f"Attribute '{name}' of {_element_name(element)} has to be a "
            f"list of numbers, got '{value}'."
        )


def _child(root, tag: str, required: bool = True):
    element = root.find(tag)
    if element is None and required:
        raise InvalidArgumentError(
            f"Configuration is missing the element <{tag}>."
        )
    return element


def apply_override(root, override: str) -> None:
    """Set an attribute of a configuration tree by dotted path.

    ``grid.N=4096`` sets the attribute N of ``<grid>``; an index selects
    among repeated elements, e.g. ``train.soliton[2].c=1.5``.

    :raises InvalidArgumentError: if the override is malformed or names an
        element that does not exist.
    """
    key, separator, value = override.partition("=")
    parts = key.strip().split(".")
    if not separator or len(parts) < 2 or not all(parts):
        raise InvalidArgumentError(
            f"Override has to have the form ELEMENT.ATTRIBUTE=VALUE, got "
            f"'{override}'."
        )
    element = root.find("/".join(parts[:-1]))
    if element is None:
        raise InvalidArgumentError(
            f"Override '{override}' names an element that is not in the "
            f"configuration."
        )
    element.set(parts[-1], value.strip())
    logger.debug("Configuration override %s", override)


class ExperimentConfig:
    """Resolved experiment configuration.

    Build it with :func:`parse_config`; the constructor takes the parsed
    ``<experiment>`` element.
    """

    def __init__(self, root) -> None:
        """Constructor for ExperimentConfig.

        :param root: ``<experiment>`` element.

        :raises InvalidArgumentError: if an element or attribute is missing
            or malformed.
        :raises ValueError: if the equation variant is unknown.
        """
        if root.tag != "experiment":
            raise InvalidArgumentError(
                f"Configuration root has to be <experiment>, got "
                f"<{root.tag}>."
            )
        self.root = root

        train = _child(root, "train")
        self.variant = EquationVariant(_attribute(train, "variant"))
        self.b = _float(train, "b", 0.0)

        self.solitons = [
            {
                "omega": _float(element, "omega"),
                "c": _float(element, "c"),
                "theta": _float(element, "theta", 0.0),
                "x0": _float(element, "x0", 0.0),
            }
            for element in train.findall("soliton")
        ]
        family = train.find("family")
        self.family = None
        if family is not None:
            self.family = {
                "d": _floats(family, "d"),
                "h": _floats(family, "h"),
                "M": _float(family, "M"),
            }
        if bool(self.solitons) == (self.family is not None):
            raise InvalidArgumentError(
                "The train has to list either <soliton> members or one "
                "<family>."
            )
        kink = train.find("kink")
        self.kink = None
        if kink is not None:
            self.kink = {
                "c0": _float(kink, "c0"),
                "theta0": _float(kink, "theta0", 0.0),
                "x0": _float(kink, "x0", 0.0),
            }

        grid = _child(root, "grid")
        self.L = _float(grid, "L")
        self.N = _int(grid, "N")
        self.center = _float(grid, "center", 0.0)

        window = _child(root, "window", required=False)
        if window is None:
            window = etree.Element("window")
        self.T0 = _float(window, "T0", 0.0)
        self.T1 = _float(window, "T1", None)
        self.Tmax = _float(window, "Tmax", None)

        step = _child(root, "step", required=False)
        if step is None:
            step = etree.Element("step")
        self.dt = _float(step, "dt", None)
        self.dt_s = _float(step, "dt_s", None)
        self.stride = _int(step, "stride", 1)

        tolerances = _child(root, "tolerances", required=False)
        if tolerances is None:
            tolerances = etree.Element("tolerances")
        self.picard_tolerance = _float(
            tolerances, "picard", defaults.PICARD_TOLERANCE
        )
        self.max_iters = _int(
            tolerances, "max_iters", defaults.PICARD_MAX_ITERS
        )
        self.gate = _float(tolerances, "gate", defaults.SEPARATION_GATE)

        residual = _child(root, "residual", required=False)
        if residual is None:
            residual = etree.Element("residual")
        self.samples = _int(residual, "samples", defaults.RESIDUAL_SAMPLES)
        self.norm = _attribute(residual, "norm", "h2")

    def build_solitons(self) -> List[SolitonParams]:
        """Soliton members of the configured train."""
        if self.family is not None:
            return scaled_family(
                self.variant, self.family["d"], self.family["h"],
                self.family["M"], b=self.b
            )
        return [
            SolitonParams(self.variant, b=self.b, **member)
            for member in self.solitons
        ]

    def build_spec(self) -> TrainSpec:
        """Validated train specification.

        :raises ValidationError: listing every violated train condition.
        :raises InvalidFamilyError: for an inconsistent family.
        :raises InvalidParameterError: for invalid kink parameters.
        """
        kink = None
        if self.kink is not None:
            kink = KinkParams(b=self.b, **self.kink)
        return TrainSpec(self.variant, self.build_solitons(), kink)

    def build_grid(self) -> Grid:
        """Configured grid."""
        return Grid(self.L, self.N, self.center)

    def require(self, *names: str) -> None:
        """Check that optional settings needed by a command are given.

        :raises InvalidArgumentError: naming the first missing setting.
        """
        for name in names:
            if getattr(self, name) is None:
                raise InvalidArgumentError(
                    f"Configuration setting '{name}' is needed by this "
                    f"command."
                )

    def to_element(self):
        """Copy of the resolved configuration tree."""
        return copy.deepcopy(self.root)


def parse_config(
    source: Union[str, Path, bytes],
    overrides: Iterable[str] = ()
) -> ExperimentConfig:
    """Parse an experiment configuration and apply overrides.

    :param source: Path to an XML file, or the XML document as bytes.
    :param overrides: ``ELEMENT.ATTRIBUTE=VALUE`` strings applied in order.

    :raises InvalidArgumentError: if the document cannot be parsed or an
        override or setting is invalid.
    """
    parser = etree.XMLParser(remove_blank_text=True, remove_comments=True)
    try:
        if isinstance(source, bytes):
            root = etree.fromstring(source, parser)
        else:
            root = etree.parse(str(source), parser).getroot()
    except (etree.XMLSyntaxError, OSError) as error:
        raise InvalidArgumentError(
            f"Configuration could not be read: {error}"
        )
    for override in overrides:
        apply_override(root, override)
    return ExperimentConfig(root)
