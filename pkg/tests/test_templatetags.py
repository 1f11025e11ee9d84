from django.template import Context, Template
from django.test import SimpleTestCase

from selective_orders.templatetags import selectivity_tags


class TemplateTagTests(SimpleTestCase):
    def test_vertex(self):
        assert selectivity_tags.vertex((1, 1, 0, 0)) == "[1,1,0,0]"
        assert selectivity_tags.vertex([]) == "[]"

    def test_residues(self):
        assert selectivity_tags.residues({2, 0}) == "{0,2}"
        assert selectivity_tags.residues([]) == "{}"

    def test_splitting(self):
        assert selectivity_tags.splitting([[1, 1], [1, 2]]) == "(1,1) (1,2)"
        assert selectivity_tags.splitting(((2, 1),)) == "(2,1)"

    def test_form(self):
        assert selectivity_tags.form([3, -2, 5]) == "(3, -2, 5)"

    def test_in_template(self):
        template = Template(
            "{% load selectivity_tags %}{{ v|vertex }} {{ t|residues }}"
        )
        context = Context({"v": (2, 0, 1), "t": {3, 1}})
        assert template.render(context) == "[2,0,1] {1,3}"
