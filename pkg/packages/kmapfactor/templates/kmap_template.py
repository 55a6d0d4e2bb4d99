"""Template for ASCII Karnaugh maps."""

KMAP_TEMPLATE = """{{ header }}
{% for line in rows %}{{ line }}
{% endfor %}{% if legend %}
{% for entry in legend %}{{ entry.tag }} = {{ entry.expression }}  [{{ entry.cells }} cells, {{ entry.cost }} gates]
{% endfor %}{% endif %}"""
