# Named enumerators shipped with the package.
# Coefficients are listed by increasing power of y; `_even` spreads values over y^0, y^2, y^4, ...

BUILTIN_SOURCE = 'builtin'


def _even(*values):
    out = []
    for v in values:
        out += [v, '0']
    return out[:-1]


def _w2(q_minus_one):
    return ['1', '0', q_minus_one]


_EXTREMAL_24 = ['1', '0', '0', '0',
                '-16422-11592*sqrt(2)', '0',
                '1020096+721280*sqrt(2)', '0',
                '-33004977-23338008*sqrt(2)', '0',
                '519785280+367543680*sqrt(2)', '0',
                '-4102489300-2900898000*sqrt(2)', '0',
                '17657398080+12485665920*sqrt(2)', '0',
                '-38087686257-26932061232*sqrt(2)', '0',
                '39988783296+28276339840*sqrt(2)', '0',
                '-21850472742-15450617448*sqrt(2)', '0',
                '0', '0',
                '768398401+543339720*sqrt(2)']

# name: (q, coefficients, class, RH status)
BUILTIN_ENTRIES = {
    'W2_2': ('2', _w2('1'), 'invariant', 'holds'),
    'W2_4': ('4', _w2('3'), 'invariant', 'holds'),
    'W2_4_3': ('4/3', _w2('1/3'), 'invariant', 'holds'),
    'W2_4p2sqrt2': ('4+2*sqrt(2)', _w2('3+2*sqrt(2)'), 'invariant', 'holds'),
    'W2_4m2sqrt2': ('4-2*sqrt(2)', _w2('3-2*sqrt(2)'), 'invariant', 'holds'),
    'W2_2p2sqrt5_5': ('2+2/5*sqrt(5)', _w2('1+2/5*sqrt(5)'), 'invariant', 'holds'),
    'W2_2m2sqrt5_5': ('2-2/5*sqrt(5)', _w2('1-2/5*sqrt(5)'), 'invariant', 'holds'),
    'W2_8p4sqrt3': ('8+4*sqrt(3)', _w2('7+4*sqrt(3)'), 'invariant', 'holds'),
    'W2_8m4sqrt3': ('8-4*sqrt(3)', _w2('7-4*sqrt(3)'), 'invariant', 'holds'),

    'phi4': ('2', _even('1', '-6', '1'), 'anti-invariant', 'holds'),
    'phi6': ('4/3', _even('1', '-5', '5/3', '-1/27'), 'anti-invariant', 'holds'),
    'phi8plus': ('4+2*sqrt(2)',
                 _even('1', '-84-56*sqrt(2)', '1190+840*sqrt(2)', '-2772-1960*sqrt(2)', '577+408*sqrt(2)'),
                 'anti-invariant', 'fails'),
    'phi8minus': ('4-2*sqrt(2)',
                  _even('1', '-84+56*sqrt(2)', '1190-840*sqrt(2)', '-2772+1960*sqrt(2)', '577-408*sqrt(2)'),
                  'anti-invariant', 'holds'),
    'phi10plus': ('2+2/5*sqrt(5)',
                  _even('1', '-45-18*sqrt(5)', '378+168*sqrt(5)', '-714-1596/5*sqrt(5)',
                        '1449/5+648/5*sqrt(5)', '-61/5-682/125*sqrt(5)'),
                  'anti-invariant', 'fails'),
    'phi10minus': ('2-2/5*sqrt(5)',
                   _even('1', '-45+18*sqrt(5)', '378-168*sqrt(5)', '-714+1596/5*sqrt(5)',
                         '1449/5-648/5*sqrt(5)', '-61/5+682/125*sqrt(5)'),
                   'anti-invariant', 'holds'),
    'phi12plus': ('8+4*sqrt(3)',
                  _even('1', '-462-264*sqrt(3)', '48015+27720*sqrt(3)', '-1248324-720720*sqrt(3)',
                        '9314415+5377680*sqrt(3)', '-17297742-9986856*sqrt(3)', '3650401+2107560*sqrt(3)'),
                  'anti-invariant', 'fails'),
    'phi12minus': ('8-4*sqrt(3)',
                   _even('1', '-462+264*sqrt(3)', '48015-27720*sqrt(3)', '-1248324+720720*sqrt(3)',
                         '9314415-5377680*sqrt(3)', '-17297742+9986856*sqrt(3)', '3650401-2107560*sqrt(3)'),
                   'anti-invariant', 'holds'),
    'phi3': ('4', ['1', '0', '-9', '0'], 'anti-invariant', 'holds'),
    'phi5': ('6-2*sqrt(5)', ['1', '0', '-50+20*sqrt(5)', '0', '225-100*sqrt(5)', '0'], 'anti-invariant', 'holds'),

    'WH8': ('2', _even('1', '0', '14', '0', '1'), 'invariant', None),
    'WG24': ('2', _even('1', '0', '0', '0', '759', '0', '2576', '0', '759', '0', '0', '0', '1'), 'invariant', None),
    'W12': ('2', _even('1', '0', '-33', '0', '-33', '0', '1'), 'anti-invariant', 'holds'),
    'extremal24': ('4+2*sqrt(2)', _EXTREMAL_24, 'anti-invariant', 'fails'),
}
