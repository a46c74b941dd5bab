import xml.etree.ElementTree as ET

from simuorb import analyze
from simuorb.svg import count_orbit_elements, families, render


def test_well_formed_and_counts():
    doc = render(7, analyze(7, detail=True))
    root = ET.fromstring(doc.encode())
    assert root.tag.endswith("svg")
    assert count_orbit_elements(doc) == 10
    assert doc.count('class="vertex"') == 7
    assert doc.count('class="point"') == 91 - 7


def test_without_points():
    doc = render(8, analyze(8, detail=True), with_points=False)
    assert 'class="point"' not in doc
    assert count_orbit_elements(doc) == 14


def test_no_highlight_means_no_families():
    assert families(render(9, analyze(9, detail=True))) == {}


def test_no_negative_zero():
    assert '"-0"' not in render(12, analyze(12, detail=True))
