"""Module for writing experiment series and records.

Series are CSV files written with pandas, records are XML documents written
incrementally with lxml. Every number is written with 17 significant digits
and records carry no timestamps, so identical runs give identical files.
"""
from io import BytesIO
from pathlib import Path
from typing import Dict, Iterable, Mapping, Optional, Union

import numpy as np
import pandas as pd
from lxml import etree

from dnls_trains import defaults
from dnls_trains.profiles import TrainSpec

RecordValue = Union[None, bool, int, float, str, Iterable[float]]


def format_value(value: RecordValue) -> str:
    """Format a record value as attribute or element text.

    Booleans become "true"/"false", floats use 17 significant digits and
    sequences are space separated.
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return defaults.FLOAT_FORMAT % value
    if isinstance(value, str):
        return value
    return " ".join(format_value(item) for item in value)


def write_series(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    """Write a series as CSV without the index column."""
    path = Path(path)
    frame.to_csv(path, index=False, float_format=defaults.FLOAT_FORMAT)
    return path


def derived_element(spec: TrainSpec):
    """``<derived>`` element with γ, v*, λ and the member parameters.

    v* and λ are left out for single member trains.
    """
    attributes: Dict[str, str] = {"gamma": format_value(spec.gamma)}
    if len(spec.members) > 1:
        attributes["v_star"] = format_value(spec.v_star)
        attributes["lambda"] = format_value(spec.decay_rate)
    element = etree.Element("derived", attributes)
    for index, member in enumerate(spec.members):
        etree.SubElement(element, "member", {
            "index": str(index),
            "label": member.label,
            "speed": format_value(member.speed),
            "frequency": format_value(member.frequency),
            "width": format_value(member.width),
        })
    return element


def _section_element(name: str, values: Mapping[str, RecordValue]):
    """Scalars become attributes, sequences become child elements."""
    element = etree.Element(name)
    for key, value in values.items():
        if value is None or isinstance(
                value, (bool, int, float, str, np.generic)):
            element.set(key, format_value(value))
        else:
            etree.SubElement(element, key).text = format_value(value)
    return element


def _write_record(
    output_file,
    kind: str,
    config_element,
    spec: Optional[TrainSpec],
    sections: Mapping[str, Mapping[str, RecordValue]]
):
    with etree.xmlfile(output_file, encoding="utf-8") as xml:
        xml.write_declaration()
        with xml.element("record", {"kind": kind}):
            xml.write(config_element, pretty_print=True)
            if spec is not None:
                xml.write(derived_element(spec), pretty_print=True)
            for name, values in sections.items():
                xml.write(_section_element(name, values), pretty_print=True)
    return output_file


def write_record(
    path: Union[str, Path],
    kind: str,
    config_element,
    spec: Optional[TrainSpec],
    sections: Mapping[str, Mapping[str, RecordValue]]
) -> Path:
    """Write an experiment record.

    :param path: Output path.
    :param kind: Name of the experiment, stored on the root element.
    :param config_element: Resolved ``<experiment>`` element.
    :param spec: Train whose derived quantities are embedded, if valid.
    :param sections: Named groups of results, one element each.
    """
    path = Path(path)
    _write_record(str(path), kind, config_element, spec, sections)
    return path


def record_to_bytes(
    kind: str,
    config_element,
    spec: Optional[TrainSpec],
    sections: Mapping[str, Mapping[str, RecordValue]]
) -> bytes:
    """Record as XML-formatted byte string."""
    output_file = BytesIO()
    result = _write_record(
        output_file, kind, config_element, spec, sections
    ).getvalue()
    output_file.close()
    return result
