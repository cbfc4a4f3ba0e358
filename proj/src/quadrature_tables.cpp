// Generated by tools/gen_quadrature.py. Do not edit by hand.

#include "quadrature_tables.hpp"

namespace curlstokes::detail {

const std::array<RawTriangleRule, 10> kTriangleRules = {{
    // degree 1, 1 points
    {1, {
        {{0.33333333333333337, 0.3333333333333333, 0.33333333333333337}, 0.5},
    }},
    // degree 2, 4 points
    {2, {
        {{0.6663902460147014, 0.17855872826361643, 0.15505102572168217}, 0.15902069087198858},
        {{0.1785587282636164, 0.6663902460147014, 0.15505102572168217}, 0.15902069087198858},
        {{0.280019915499074, 0.07503111022260811, 0.6449489742783179}, 0.09097930912801142},
        {{0.07503111022260811, 0.280019915499074, 0.6449489742783179}, 0.09097930912801142},
    }},
    // degree 3, 4 points
    {3, {
        {{0.6663902460147014, 0.17855872826361643, 0.15505102572168217}, 0.15902069087198858},
        {{0.1785587282636164, 0.6663902460147014, 0.15505102572168217}, 0.15902069087198858},
        {{0.280019915499074, 0.07503111022260811, 0.6449489742783179}, 0.09097930912801142},
        {{0.07503111022260811, 0.280019915499074, 0.6449489742783179}, 0.09097930912801142},
    }},
    // degree 4, 9 points
    {4, {
        {{0.8086943856776698, 0.10271765480962626, 0.08858795951270393}, 0.05581442048304436},
        {{0.45570602024364804, 0.45570602024364804, 0.08858795951270393}, 0.08930307277287088},
        {{0.10271765480962625, 0.8086943856776698, 0.08858795951270393}, 0.05581442048304436},
        {{0.5239790677201007, 0.0665540678391645, 0.40946686444073477}, 0.06367808509988508},
        {{0.29526656777963256, 0.2952665677796326, 0.40946686444073477}, 0.10188493615981602},
        {{0.06655406783916451, 0.5239790677201007, 0.40946686444073477}, 0.06367808509988508},
        {{0.18840940595207234, 0.02393113228708062, 0.787659461760847}, 0.0193963833059595},
        {{0.1061702691195765, 0.1061702691195765, 0.787659461760847}, 0.031034213289535168},
        {{0.02393113228708066, 0.18840940595207237, 0.787659461760847}, 0.0193963833059595},
    }},
    // degree 5, 9 points
    {5, {
        {{0.8086943856776698, 0.10271765480962626, 0.08858795951270393}, 0.05581442048304436},
        {{0.45570602024364804, 0.45570602024364804, 0.08858795951270393}, 0.08930307277287088},
        {{0.10271765480962625, 0.8086943856776698, 0.08858795951270393}, 0.05581442048304436},
        {{0.5239790677201007, 0.0665540678391645, 0.40946686444073477}, 0.06367808509988508},
        {{0.29526656777963256, 0.2952665677796326, 0.40946686444073477}, 0.10188493615981602},
        {{0.06655406783916451, 0.5239790677201007, 0.40946686444073477}, 0.06367808509988508},
        {{0.18840940595207234, 0.02393113228708062, 0.787659461760847}, 0.0193963833059595},
        {{0.1061702691195765, 0.1061702691195765, 0.787659461760847}, 0.031034213289535168},
        {{0.02393113228708066, 0.18840940595207237, 0.787659461760847}, 0.0193963833059595},
    }},
    // degree 6, 16 points
    {6, {
        {{0.8774288093304679, 0.06546699455501445, 0.057104196114517725}, 0.0235683681933824},
        {{0.6317312516411253, 0.311164552244357, 0.057104196114517725}, 0.04418508852236186},
        {{0.3111645522443571, 0.6317312516411252, 0.057104196114517725}, 0.04418508852236186},
        {{0.06546699455501453, 0.8774288093304677, 0.057104196114517725}, 0.0235683681933824},
        {{0.6729468631505064, 0.05021012321136978, 0.2768430136381238}, 0.03538806789808589},
        {{0.4845083266304333, 0.23864865973144292, 0.2768430136381238}, 0.06634421610704966},
        {{0.2386486597314429, 0.48450832663043325, 0.2768430136381238}, 0.06634421610704966},
        {{0.05021012321136986, 0.6729468631505063, 0.2768430136381238}, 0.03538806789808589},
        {{0.3874974834066941, 0.028912084224389012, 0.5835904323689168}, 0.022584049282369907},
        {{0.2789904634965088, 0.13741910413457437, 0.5835904323689168}, 0.04233972452174626},
        {{0.13741910413457437, 0.2789904634965088, 0.5835904323689168}, 0.04233972452174626},
        {{0.028912084224388956, 0.38749748340669415, 0.5835904323689168}, 0.022584049282369907},
        {{0.13005607921683437, 0.00970378512694611, 0.8602401356562195}, 0.0054232259105252536},
        {{0.09363778443732851, 0.046122079906452035, 0.8602401356562195}, 0.010167259564478788},
        {{0.04612207990645201, 0.09363778443732848, 0.8602401356562195}, 0.010167259564478788},
        {{0.00970378512694614, 0.1300560792168344, 0.8602401356562195}, 0.0054232259105252536},
    }},
    // degree 7, 16 points
    {7, {
        {{0.8774288093304679, 0.06546699455501445, 0.057104196114517725}, 0.0235683681933824},
        {{0.6317312516411253, 0.311164552244357, 0.057104196114517725}, 0.04418508852236186},
        {{0.3111645522443571, 0.6317312516411252, 0.057104196114517725}, 0.04418508852236186},
        {{0.06546699455501453, 0.8774288093304677, 0.057104196114517725}, 0.0235683681933824},
        {{0.6729468631505064, 0.05021012321136978, 0.2768430136381238}, 0.03538806789808589},
        {{0.4845083266304333, 0.23864865973144292, 0.2768430136381238}, 0.06634421610704966},
        {{0.2386486597314429, 0.48450832663043325, 0.2768430136381238}, 0.06634421610704966},
        {{0.05021012321136986, 0.6729468631505063, 0.2768430136381238}, 0.03538806789808589},
        {{0.3874974834066941, 0.028912084224389012, 0.5835904323689168}, 0.022584049282369907},
        {{0.2789904634965088, 0.13741910413457437, 0.5835904323689168}, 0.04233972452174626},
        {{0.13741910413457437, 0.2789904634965088, 0.5835904323689168}, 0.04233972452174626},
        {{0.028912084224388956, 0.38749748340669415, 0.5835904323689168}, 0.022584049282369907},
        {{0.13005607921683437, 0.00970378512694611, 0.8602401356562195}, 0.0054232259105252536},
        {{0.09363778443732851, 0.046122079906452035, 0.8602401356562195}, 0.010167259564478788},
        {{0.04612207990645201, 0.09363778443732848, 0.8602401356562195}, 0.010167259564478788},
        {{0.00970378512694614, 0.1300560792168344, 0.8602401356562195}, 0.0054232259105252536},
    }},
    // degree 8, 25 points
    {8, {
        {{0.9151475493787276, 0.04504259356980374, 0.03980985705146872}, 0.011465080351592518},
        {{0.738611533396152, 0.2215786095523792, 0.03980985705146872}, 0.023161221929498342},
        {{0.4800950714742656, 0.48009507147426567, 0.03980985705146872}, 0.02752898566446976},
        {{0.22157860955237924, 0.738611533396152, 0.03980985705146872}, 0.023161221929498342},
        {{0.045042593569803724, 0.9151475493787276, 0.03980985705146872}, 0.011465080351592518},
        {{0.7643653297812807, 0.037621252345111204, 0.1980134178736082}, 0.01980408313204736},
        {{0.6169158718590024, 0.18507071026738944, 0.1980134178736082}, 0.04000728738616046},
        {{0.40099329106319587, 0.4009932910631959, 0.1980134178736082}, 0.047551897057954054},
        {{0.18507071026738947, 0.6169158718590023, 0.1980134178736082}, 0.04000728738616046},
        {{0.03762125234511121, 0.7643653297812806, 0.1980134178736082}, 0.01980408313204736},
        {{0.535660544808143, 0.026364644944470925, 0.43797481024738616}, 0.017341506431365696},
        {{0.43232925297035973, 0.1296959367822541, 0.43797481024738616}, 0.03503250450337173},
        {{0.2810125948763069, 0.2810125948763069, 0.43797481024738616}, 0.04163896521519499},
        {{0.1296959367822541, 0.4323292529703597, 0.43797481024738616}, 0.03503250450337173},
        {{0.026364644944470994, 0.5356605448081428, 0.43797481024738616}, 0.017341506431365696},
        {{0.29024993225079243, 0.014285794395571387, 0.6954642733536361}, 0.008755499182163829},
        {{0.2342594346380822, 0.07027629200828171, 0.6954642733536361}, 0.01768745211048347},
        {{0.15226786332318187, 0.15226786332318193, 0.6954642733536361}, 0.021022967487322082},
        {{0.07027629200828167, 0.23425943463808213, 0.6954642733536361}, 0.01768745211048347},
        {{0.014285794395571427, 0.29024993225079243, 0.6954642733536361}, 0.008755499182163829},
        {{0.09391279733378, 0.00462228846504643, 0.9014649142011736}, 0.0018655521668778402},
        {{0.07579660273506239, 0.022738483063764033, 0.9014649142011736}, 0.0037687016953276264},
        {{0.049267542899413264, 0.04926754289941321, 0.9014649142011736}, 0.004479406797281366},
        {{0.022738483063764026, 0.07579660273506238, 0.9014649142011736}, 0.0037687016953276264},
        {{0.00462228846504642, 0.09391279733377998, 0.9014649142011736}, 0.0018655521668778402},
    }},
    // degree 9, 25 points
    {9, {
        {{0.9151475493787276, 0.04504259356980374, 0.03980985705146872}, 0.011465080351592518},
        {{0.738611533396152, 0.2215786095523792, 0.03980985705146872}, 0.023161221929498342},
        {{0.4800950714742656, 0.48009507147426567, 0.03980985705146872}, 0.02752898566446976},
        {{0.22157860955237924, 0.738611533396152, 0.03980985705146872}, 0.023161221929498342},
        {{0.045042593569803724, 0.9151475493787276, 0.03980985705146872}, 0.011465080351592518},
        {{0.7643653297812807, 0.037621252345111204, 0.1980134178736082}, 0.01980408313204736},
        {{0.6169158718590024, 0.18507071026738944, 0.1980134178736082}, 0.04000728738616046},
        {{0.40099329106319587, 0.4009932910631959, 0.1980134178736082}, 0.047551897057954054},
        {{0.18507071026738947, 0.6169158718590023, 0.1980134178736082}, 0.04000728738616046},
        {{0.03762125234511121, 0.7643653297812806, 0.1980134178736082}, 0.01980408313204736},
        {{0.535660544808143, 0.026364644944470925, 0.43797481024738616}, 0.017341506431365696},
        {{0.43232925297035973, 0.1296959367822541, 0.43797481024738616}, 0.03503250450337173},
        {{0.2810125948763069, 0.2810125948763069, 0.43797481024738616}, 0.04163896521519499},
        {{0.1296959367822541, 0.4323292529703597, 0.43797481024738616}, 0.03503250450337173},
        {{0.026364644944470994, 0.5356605448081428, 0.43797481024738616}, 0.017341506431365696},
        {{0.29024993225079243, 0.014285794395571387, 0.6954642733536361}, 0.008755499182163829},
        {{0.2342594346380822, 0.07027629200828171, 0.6954642733536361}, 0.01768745211048347},
        {{0.15226786332318187, 0.15226786332318193, 0.6954642733536361}, 0.021022967487322082},
        {{0.07027629200828167, 0.23425943463808213, 0.6954642733536361}, 0.01768745211048347},
        {{0.014285794395571427, 0.29024993225079243, 0.6954642733536361}, 0.008755499182163829},
        {{0.09391279733378, 0.00462228846504643, 0.9014649142011736}, 0.0018655521668778402},
        {{0.07579660273506239, 0.022738483063764033, 0.9014649142011736}, 0.0037687016953276264},
        {{0.049267542899413264, 0.04926754289941321, 0.9014649142011736}, 0.004479406797281366},
        {{0.022738483063764026, 0.07579660273506238, 0.9014649142011736}, 0.0037687016953276264},
        {{0.00462228846504642, 0.09391279733377998, 0.9014649142011736}, 0.0018655521668778402},
    }},
    // degree 10, 36 points
    {10, {
        {{0.9379082062257551, 0.03277536661445988, 0.02931642715978494}, 0.006194265352658861},
        {{0.8062543312453876, 0.16442924159482744, 0.02931642715978494}, 0.013043394330082867},
        {{0.6011536484678384, 0.36952992437237664, 0.02931642715978494}, 0.016917505680012716},
        {{0.3695299243723767, 0.6011536484678384, 0.02931642715978494}, 0.016917505680012716},
        {{0.16442924159482747, 0.8062543312453876, 0.02931642715978494}, 0.013043394330082867},
        {{0.032775366614459955, 0.9379082062257551, 0.02931642715978494}, 0.006194265352658861},
        {{0.8231560673189566, 0.028765333012559118, 0.1480785996684843}, 0.011610874766997507},
        {{0.7076099133810991, 0.14431148695041665, 0.1480785996684843}, 0.02444926225805782},
        {{0.5276030957427398, 0.324318304588776, 0.1480785996684843}, 0.03171111159070401},
        {{0.32431830458877603, 0.5276030957427397, 0.1480785996684843}, 0.03171111159070401},
        {{0.14431148695041668, 0.707609913381099, 0.1480785996684843}, 0.02444926225805782},
        {{0.02876533301255918, 0.8231560673189565, 0.1480785996684843}, 0.011610874766997507},
        {{0.640628436740815, 0.022386872978030627, 0.3369846902811543}, 0.012060606404265088},
        {{0.550703627937892, 0.1123116817809537, 0.3369846902811543}, 0.025396271589047635},
        {{0.4106117416423277, 0.252403568076518, 0.3369846902811543}, 0.03293939890078668},
        {{0.252403568076518, 0.4106117416423277, 0.3369846902811543}, 0.03293939890078668},
        {{0.11231168178095374, 0.550703627937892, 0.3369846902811543}, 0.025396271589047635},
        {{0.02238687297803066, 0.640628436740815, 0.3369846902811543}, 0.012060606404265088},
        {{0.42642691786177866, 0.014901563366671153, 0.5586715187715502}, 0.008451535796943108},
        {{0.3665695077658008, 0.07475897346264909, 0.5586715187715502}, 0.017796575997026262},
        {{0.2733189621072579, 0.16800951912119183, 0.5586715187715502}, 0.02308246365135823},
        {{0.16800951912119177, 0.273318962107258, 0.5586715187715502}, 0.02308246365135823},
        {{0.07475897346264915, 0.3665695077658007, 0.5586715187715502}, 0.017796575997026262},
        {{0.014901563366671144, 0.42642691786177866, 0.5586715187715502}, 0.008451535796943108},
        {{0.2229742632686591, 0.007791874701286429, 0.7692338620300545}, 0.003765298212691668},
        {{0.19167543723712122, 0.039090700732824245, 0.7692338620300545}, 0.00792866733379648},
        {{0.1429156829939483, 0.08785045497599718, 0.7692338620300545}, 0.01028361722876633},
        {{0.0878504549759972, 0.1429156829939483, 0.7692338620300545}, 0.01028361722876633},
        {{0.03909070073282428, 0.19167543723712124, 0.7692338620300545}, 0.00792866733379648},
        {{0.007791874701286394, 0.22297426326865907, 0.7692338620300545}, 0.003765298212691668},
        {{0.07058763152758873, 0.002466697152670245, 0.926945671319741}, 0.0007485425612363173},
        {{0.060679268262818886, 0.012375060417440052, 0.926945671319741}, 0.0015762217540235878},
        {{0.04524324656489831, 0.027811082115360607, 0.926945671319741}, 0.002044386591544859},
        {{0.027811082115360652, 0.04524324656489836, 0.926945671319741}, 0.002044386591544859},
        {{0.012375060417440076, 0.06067926826281891, 0.926945671319741}, 0.0015762217540235878},
        {{0.0024666971526702275, 0.07058763152758872, 0.926945671319741}, 0.0007485425612363173},
    }},
}};

const std::array<RawEdgeRule, 12> kEdgeRules = {{
    // degree 1, 1 points
    {1, {
        {0.5, 1.0},
    }},
    // degree 2, 2 points
    {2, {
        {0.21132486540518713, 0.5},
        {0.7886751345948129, 0.5},
    }},
    // degree 3, 2 points
    {3, {
        {0.21132486540518713, 0.5},
        {0.7886751345948129, 0.5},
    }},
    // degree 4, 3 points
    {4, {
        {0.1127016653792583, 0.2777777777777779},
        {0.5, 0.44444444444444414},
        {0.8872983346207417, 0.2777777777777779},
    }},
    // degree 5, 3 points
    {5, {
        {0.1127016653792583, 0.2777777777777779},
        {0.5, 0.44444444444444414},
        {0.8872983346207417, 0.2777777777777779},
    }},
    // degree 6, 4 points
    {6, {
        {0.06943184420297371, 0.1739274225687269},
        {0.33000947820757187, 0.3260725774312731},
        {0.6699905217924281, 0.3260725774312731},
        {0.9305681557970262, 0.1739274225687269},
    }},
    // degree 7, 4 points
    {7, {
        {0.06943184420297371, 0.1739274225687269},
        {0.33000947820757187, 0.3260725774312731},
        {0.6699905217924281, 0.3260725774312731},
        {0.9305681557970262, 0.1739274225687269},
    }},
    // degree 8, 5 points
    {8, {
        {0.04691007703066802, 0.11846344252809449},
        {0.23076534494715845, 0.23931433524968326},
        {0.5, 0.2844444444444445},
        {0.7692346550528415, 0.23931433524968326},
        {0.9530899229693319, 0.11846344252809449},
    }},
    // degree 9, 5 points
    {9, {
        {0.04691007703066802, 0.11846344252809449},
        {0.23076534494715845, 0.23931433524968326},
        {0.5, 0.2844444444444445},
        {0.7692346550528415, 0.23931433524968326},
        {0.9530899229693319, 0.11846344252809449},
    }},
    // degree 10, 6 points
    {10, {
        {0.033765242898423975, 0.08566224618958508},
        {0.16939530676686776, 0.18038078652406928},
        {0.3806904069584015, 0.2339569672863456},
        {0.6193095930415985, 0.2339569672863456},
        {0.8306046932331322, 0.18038078652406928},
        {0.966234757101576, 0.08566224618958508},
    }},
    // degree 11, 6 points
    {11, {
        {0.033765242898423975, 0.08566224618958508},
        {0.16939530676686776, 0.18038078652406928},
        {0.3806904069584015, 0.2339569672863456},
        {0.6193095930415985, 0.2339569672863456},
        {0.8306046932331322, 0.18038078652406928},
        {0.966234757101576, 0.08566224618958508},
    }},
    // degree 12, 7 points
    {12, {
        {0.025446043828620812, 0.06474248308443496},
        {0.12923440720030277, 0.1398526957446383},
        {0.2970774243113014, 0.19091502525255938},
        {0.5, 0.20897959183673456},
        {0.7029225756886985, 0.19091502525255938},
        {0.8707655927996972, 0.1398526957446383},
        {0.9745539561713792, 0.06474248308443496},
    }},
}};

}  // namespace curlstokes::detail
