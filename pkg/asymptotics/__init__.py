"""
Asymptotics Module

Leading-order long-time asymptotics with their error orders, and the exact
one-soliton used as an oracle.
"""
