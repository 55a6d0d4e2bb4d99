"""Template for the line-based gate netlist."""

NETLIST_TEMPLATE = """{% for line in comments %}# {{ line }}
{% endfor %}input {{ inputs | join(" ") }}
{% for gate in gates %}{{ gate.net }} = {{ gate.op }} {{ gate.operands | join(" ") }}
{% endfor %}output f {{ output }}
"""
